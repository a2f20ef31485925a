//! Text format for quadratic polynomials: a sum of monomials over variables
//! `x1..xn`, e.g. `"x1*x2 + x3 + 1"`.

use super::QuadraticPoly;
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vec};

/// Parse a polynomial. When `n` is omitted the variable count is the largest
/// index mentioned. Squares collapse (`x1*x1 = x1`) and repeated monomials
/// cancel mod 2. Degree above 2 is rejected.
pub fn parse_polynomial(s: &str, n: Option<usize>) -> Result<QuadraticPoly> {
    let mut terms: Vec<Term> = Vec::new();
    let mut max_var = 0usize;
    for raw in s.split('+') {
        let raw = raw.trim();
        if raw.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut vars: Vec<usize> = Vec::new();
        let mut coeff = true;
        for factor in raw.split('*') {
            let factor = factor.trim();
            if factor == "1" {
                continue;
            }
            if factor == "0" {
                coeff = false;
                continue;
            }
            let Some(idx) = factor.strip_prefix('x') else {
                return Err(Error::Parse(format!("bad factor {factor:?}")));
            };
            let idx: usize = idx
                .parse()
                .map_err(|e| Error::Parse(format!("variable index in {factor:?}: {e}")))?;
            if idx == 0 {
                return Err(Error::Parse("variables are 1-based".into()));
            }
            max_var = max_var.max(idx);
            vars.push(idx - 1);
        }
        if !coeff {
            continue;
        }
        vars.sort_unstable();
        vars.dedup(); // x*x = x over F2
        match vars.len() {
            0 => terms.push(Term::Constant),
            1 => terms.push(Term::Linear(vars[0])),
            2 => terms.push(Term::Quadratic(vars[0], vars[1])),
            _ => {
                return Err(Error::Parse(format!(
                    "monomial {raw:?} has degree {} > 2",
                    vars.len()
                )))
            }
        }
    }
    let n = match n {
        Some(n) if n >= max_var => n,
        Some(n) => {
            return Err(Error::Parse(format!(
                "polynomial mentions x{max_var} but n = {n}"
            )))
        }
        None => max_var,
    };
    let mut quad = F2Matrix::zeros(n, n);
    let mut linear = F2Vec::zeros(n);
    let mut constant = false;
    for term in terms {
        match term {
            Term::Constant => constant = !constant,
            Term::Linear(i) => {
                let v = linear.get(i);
                linear.set(i, !v);
            }
            Term::Quadratic(i, j) => {
                let v = quad.get(i, j);
                quad.set(i, j, !v);
            }
        }
    }
    QuadraticPoly::new(&quad, linear, constant)
}

enum Term {
    Constant,
    Linear(usize),
    Quadratic(usize, usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_display() {
        for s in ["x1*x2 + x3 + 1", "x1", "0", "x1*x2 + x1*x3 + x2"] {
            let p = parse_polynomial(s, None).unwrap();
            let rendered = p.to_string();
            let back = parse_polynomial(&rendered, Some(p.n())).unwrap();
            assert_eq!(p, back, "via {rendered:?}");
        }
    }

    #[test]
    fn squares_and_cancellation() {
        let p = parse_polynomial("x1*x1 + x2 + x2", Some(2)).unwrap();
        assert_eq!(p.to_string(), "x1");
        let q = parse_polynomial("x2*x1", Some(2)).unwrap();
        assert_eq!(q.to_string(), "x1*x2");
    }

    #[test]
    fn rejects_cubics_and_junk() {
        assert!(parse_polynomial("x1*x2*x3", None).is_err());
        assert!(parse_polynomial("y1", None).is_err());
        assert!(parse_polynomial("x0", None).is_err());
        assert!(parse_polynomial("x3", Some(2)).is_err());
    }
}
