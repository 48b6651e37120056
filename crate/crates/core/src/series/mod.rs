//! Truncated graded power series.
//!
//! [`NcSeries`] lives in the completed free algebra on the letters `τ` and
//! `t`; [`CommSeries`] is a series in `t` alone and carries the one-variable
//! calculus (composition, derivative, functional inverse, reindexing).
//!
//! Every series records its *precision*: the order through which its
//! coefficients are known. Comparisons only look at coefficients both sides
//! know, and operations propagate the precision they can vouch for.

mod comm;
mod context;
mod nc;
mod word;

pub use comm::CommSeries;
pub use context::{GradingContext, Parity};
pub use nc::NcSeries;
pub use word::{Letter, Word};

use std::fmt;

/// Writes one `coefficient * monomial` term of a sum in canonical text form.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coef: &str,
    monomial: &str,
) -> fmt::Result {
    let (negative, body) = match coef.strip_prefix('-') {
        Some(rest) if !rest.contains(' ') => (true, rest),
        _ => (false, coef),
    };
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if monomial.is_empty() {
        return f.write_str(body);
    }
    if body == "1" {
        return f.write_str(monomial);
    }
    let wrap = body.contains(' ') || (body.contains('/') && !body.starts_with('('));
    if wrap {
        write!(f, "({body})*{monomial}")
    } else {
        write!(f, "{body}*{monomial}")
    }
}
