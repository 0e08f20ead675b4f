use super::scalar::Scalar;
use num_traits::{One, Zero};

/// Joins `(coefficient, monomial text)` pairs into the canonical sum form
/// `(3/2+1/2i)*t^2 - t + 1`. Terms arrive in display order; an empty
/// monomial text denotes the constant term.
pub(crate) fn render_terms(terms: impl Iterator<Item = (Scalar, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative_real();
        let mag = if neg { -c } else { c };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag.render());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&mag.render());
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
