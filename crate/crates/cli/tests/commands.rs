use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

const E31: &str = "slnrectify/1\ncurve n=3\nentry 1 1 : 1\nentry 1 2 : 0\nentry 1 3 : 0\nentry 2 1 : 0\nentry 2 2 : 1\nentry 2 3 : 0\nentry 3 1 : t\nentry 3 2 : 0\nentry 3 3 : 1\n";

struct Run {
    code: i32,
    stdout: String,
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_slnrectify")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_exit_codes() {
    let d = TempDir::new().unwrap();
    let e31 = write(d.path(), "e31", E31);
    let fold = write(
        d.path(),
        "fold",
        "slnrectify/1\ncurve n=2\nentry 1 1 : 1\nentry 1 2 : 0\nentry 2 1 : t^2\nentry 2 2 : 1\n",
    );
    let trunc = write(d.path(), "trunc", "slnrectify/1\ncurve n=3\nentry 1 1 : 1\n");
    assert_eq!(run(&["verify", s(&e31)]).code, 0);
    assert_eq!(run(&["verify", s(&fold)]).code, 3);
    assert_eq!(run(&["verify", s(&trunc)]).code, 2);
}

#[test]
fn rectify_then_replay() {
    let d = TempDir::new().unwrap();
    let word = write(
        d.path(),
        "w",
        "slnrectify/1\nword n=3 len=2\nleft 1 3 : x3_1^2 + 2*x2_1\nright 1 2 : x3_1 - x1_1^3\n",
    );
    let e31 = write(d.path(), "e31", E31);
    let f = d.path().join("f");
    assert_eq!(run(&["apply", s(&word), s(&e31), "--out", s(&f)]).code, 0);
    let cert = d.path().join("cert");
    assert_eq!(run(&["rectify", s(&f), "--seed", "7", "--out", s(&cert)]).code, 0);
    assert_eq!(run(&["verify-cert", s(&cert)]).code, 0);

    let text = fs::read_to_string(&cert).unwrap();
    let again = run(&["rectify", s(&f), "--seed", "7"]);
    assert_eq!(again.stdout, text);

    // change one coefficient of the first recorded stage curve
    let pos = text.find("stage 1 ").unwrap();
    let (head, tail) = text.split_at(pos);
    let tail = tail.replacen("entry 2 2 : 1\n", "entry 2 2 : 2\n", 1);
    let bad = write(d.path(), "bad", &format!("{head}{tail}"));
    assert_eq!(run(&["verify-cert", s(&bad)]).code, 6);
}

#[test]
fn empty_word_and_sizes() {
    let d = TempDir::new().unwrap();
    let e31 = write(d.path(), "e31", E31);
    let empty = write(d.path(), "empty", "slnrectify/1\nword n=3 len=0\n");
    let r = run(&["apply", s(&empty), s(&e31)]);
    assert_eq!((r.code, r.stdout.as_str()), (0, E31));
    // first column (1, t²) does not embed although the whole curve does
    let folded = write(
        d.path(),
        "sl2",
        "slnrectify/1\ncurve n=2\nentry 1 1 : 1\nentry 1 2 : t\nentry 2 1 : t^2\nentry 2 2 : t^3 + 1\n",
    );
    assert_eq!(run(&["rectify", s(&folded)]).code, 5);
    assert_eq!(run(&["equiv", s(&e31), s(&folded)]).code, 2);
}

#[test]
fn lift3_paths() {
    let d = TempDir::new().unwrap();
    let ok = write(d.path(), "ok", "slnrectify/1\ntriple\ng1 : t\ng2 : 1\ng3 : t^2\n");
    let r = run(&["lift3", s(&ok)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("entry 1 2 : t^3 - 1"));
    let ttt = write(d.path(), "ttt", "slnrectify/1\ntriple\ng1 : t\ng2 : t\ng3 : t\n");
    assert_eq!(run(&["lift3", s(&ttt)]).code, 4);
    let out = d.path().join("lifted.curve");
    assert_eq!(run(&["lift3", s(&ttt), "--normalize", "--out", s(&out)]).code, 0);
    let curve = fs::read_to_string(&out).unwrap();
    assert!(curve.contains("entry 1 1 : t + 1") && curve.contains("entry 2 2 : t + 1"));
    let tame = fs::read_to_string(d.path().join("lifted.tame")).unwrap();
    assert_eq!(tame, "slnrectify/1\ntame3 len=2\nelem 1 : 1\nelem 3 : 1\n");
}
