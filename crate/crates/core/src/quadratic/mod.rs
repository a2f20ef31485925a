//! F2 quadratic polynomials: symplectic rank, product decompositions,
//! closed-form zero probabilities, and low-rank correlation structure, all
//! cross-checked against brute force.

mod parse;

pub use parse::parse_polynomial;

use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vec};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// `p(x) = x^T Q x + a^T x + b` with `Q` strictly upper triangular; any
/// diagonal of the input is absorbed into the linear term and the lower
/// triangle folded up, since `x_i^2 = x_i` over F2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPoly {
    n: usize,
    quad: F2Matrix,
    linear: F2Vec,
    constant: bool,
}

impl QuadraticPoly {
    /// Normalizing constructor: accepts any square `Q`.
    pub fn new(quad: &F2Matrix, linear: F2Vec, constant: bool) -> Result<Self> {
        let n = quad.n_rows();
        if quad.n_cols() != n || linear.len() != n {
            return Err(Error::InvalidParameter(
                "quadratic form must be square and match the linear term".into(),
            ));
        }
        if n > 512 {
            return Err(Error::SizeLimit("at most 512 variables".into()));
        }
        let mut upper = F2Matrix::zeros(n, n);
        let mut lin = linear;
        for i in 0..n {
            if quad.get(i, i) {
                let v = lin.get(i);
                lin.set(i, !v);
            }
            for j in i + 1..n {
                upper.set(i, j, quad.get(i, j) ^ quad.get(j, i));
            }
        }
        Ok(Self {
            n,
            quad: upper,
            linear: lin,
            constant,
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            quad: F2Matrix::zeros(n, n),
            linear: F2Vec::zeros(n),
            constant: false,
        }
    }

    /// Uniformly random polynomial.
    pub fn random(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut quad = F2Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                quad.set(i, j, rng.random());
            }
        }
        let linear = F2Vec::from_bools(&(0..n).map(|_| rng.random()).collect::<Vec<bool>>());
        Self {
            n,
            quad,
            linear,
            constant: rng.random(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quad(&self) -> &F2Matrix {
        &self.quad
    }

    pub fn linear(&self) -> &F2Vec {
        &self.linear
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    /// Toggle the coefficient of `x_i` (0-based), returning `p + x_i`.
    pub fn plus_variable(&self, i: usize) -> Self {
        let mut out = self.clone();
        let v = out.linear.get(i);
        out.linear.set(i, !v);
        out
    }

    /// Evaluate at the assignment given by `mask` (bit `i` is `x_i`).
    pub fn eval_mask(&self, mask: u64) -> bool {
        debug_assert!(self.n <= 64);
        let mut acc = self.constant;
        for i in 0..self.n {
            if mask >> i & 1 == 0 {
                continue;
            }
            if self.linear.get(i) {
                acc = !acc;
            }
            for j in i + 1..self.n {
                if mask >> j & 1 == 1 && self.quad.get(i, j) {
                    acc = !acc;
                }
            }
        }
        acc
    }

    /// The alternating form `B = Q + Q^T`.
    pub fn alternating_form(&self) -> F2Matrix {
        self.quad.add(&self.quad.transpose())
    }

    /// The substituted polynomial `p(Rx)` for a square matrix `R`: quadratic
    /// part `R^T Q R` (renormalized), linear part `R^T a`.
    pub fn substitute(&self, r: &F2Matrix) -> Result<QuadraticPoly> {
        let n = self.n;
        if r.n_rows() != n || r.n_cols() != n {
            return Err(Error::InvalidParameter(
                "substitution matrix must be n x n".into(),
            ));
        }
        let mut quad = F2Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                // (R^T Q R)[a][b] = sum_{i,j} R[i][a] Q[i][j] R[j][b].
                let mut acc = false;
                for i in 0..n {
                    if !r.get(i, a) {
                        continue;
                    }
                    for j in 0..n {
                        if self.quad.get(i, j) && r.get(j, b) {
                            acc = !acc;
                        }
                    }
                }
                quad.set(a, b, acc);
            }
        }
        let linear = F2Vec::from_bools(
            &(0..n)
                .map(|a| (0..n).fold(false, |acc, i| acc ^ (self.linear.get(i) && r.get(i, a))))
                .collect::<Vec<bool>>(),
        );
        QuadraticPoly::new(&quad, linear, self.constant)
    }
}

impl fmt::Display for QuadraticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.quad.get(i, j) {
                    terms.push(format!("x{}*x{}", i + 1, j + 1));
                }
            }
        }
        for i in 0..self.n {
            if self.linear.get(i) {
                terms.push(format!("x{}", i + 1));
            }
        }
        if self.constant {
            terms.push("1".into());
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Rank of the alternating form `Q + Q^T`; always even. The polynomial is
/// the sum of `rank/2` products of independent linear forms plus an affine
/// part.
pub fn symplectic_rank(p: &QuadraticPoly) -> usize {
    p.alternating_form().rank()
}

/// `p = sum_j (l_j . x + l_const_j)(r_j . x + r_const_j) + b'`, or the same
/// with a residual linear form when the adjusted linear term lies outside
/// `span{l, r}`.
#[derive(Debug, Clone)]
pub struct SymplecticDecomposition {
    pub h: usize,
    pub ells: Vec<F2Vec>,
    pub rs: Vec<F2Vec>,
    pub ell_consts: Vec<bool>,
    pub r_consts: Vec<bool>,
    pub b_prime: bool,
    /// The part of the linear term outside the span, when there is one.
    pub residual: Option<F2Vec>,
}

impl SymplecticDecomposition {
    /// All `2h` vectors in one list, for span checks.
    pub fn span_rows(&self) -> Vec<F2Vec> {
        self.ells.iter().chain(&self.rs).cloned().collect()
    }

    pub fn in_span(&self, target: &F2Vec) -> bool {
        express_in_span(&self.span_rows(), target).is_some()
    }

    /// Evaluate the decomposed form at `mask`.
    pub fn eval_mask(&self, mask: u64) -> bool {
        let x = mask_vec(mask, self.dimension());
        let mut acc = self.b_prime;
        for j in 0..self.h {
            let l = self.ells[j].dot(&x) ^ self.ell_consts[j];
            let r = self.rs[j].dot(&x) ^ self.r_consts[j];
            if l && r {
                acc = !acc;
            }
        }
        if let Some(res) = &self.residual {
            if res.dot(&x) {
                acc = !acc;
            }
        }
        acc
    }

    fn dimension(&self) -> usize {
        self.ells
            .first()
            .or(self.residual.as_ref())
            .map_or(0, F2Vec::len)
    }

    /// Expand the decomposition back into normalized `(Q, a, b)` form. Equal
    /// to the source polynomial as a coefficient identity.
    pub fn expand(&self, n: usize) -> QuadraticPoly {
        let mut quad = F2Matrix::zeros(n, n);
        let mut linear = vec![false; n];
        let mut constant = self.b_prime;
        for j in 0..self.h {
            let (l, r) = (&self.ells[j], &self.rs[j]);
            let (lc, rc) = (self.ell_consts[j], self.r_consts[j]);
            // (l.x + lc)(r.x + rc): cross terms fill Q (squares fold into the
            // linear part), constants scale the linear forms.
            for (a, lin) in linear.iter_mut().enumerate() {
                for b in 0..n {
                    if l.get(a) && r.get(b) {
                        if a == b {
                            *lin ^= true;
                        } else {
                            let (lo, hi) = (a.min(b), a.max(b));
                            let cur = quad.get(lo, hi);
                            quad.set(lo, hi, !cur);
                        }
                    }
                }
            }
            for (a, lin) in linear.iter_mut().enumerate() {
                *lin ^= rc && l.get(a);
                *lin ^= lc && r.get(a);
            }
            if lc && rc {
                constant = !constant;
            }
        }
        if let Some(res) = &self.residual {
            for (a, lin) in linear.iter_mut().enumerate() {
                *lin ^= res.get(a);
            }
        }
        QuadraticPoly::new(&quad, F2Vec::from_bools(&linear), constant)
            .expect("expansion is well-formed")
    }
}

fn mask_vec(mask: u64, n: usize) -> F2Vec {
    F2Vec::from_bools(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>())
}

/// Write `target` as a combination of `rows`, if possible, returning the
/// coefficients.
fn express_in_span(rows: &[F2Vec], target: &F2Vec) -> Option<Vec<bool>> {
    let k = rows.len();
    let n = target.len();
    // Gaussian elimination on rows, tracking the combination.
    let mut work: Vec<(F2Vec, Vec<bool>)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut tag = vec![false; k];
            tag[i] = true;
            (r.clone(), tag)
        })
        .collect();
    let mut t = target.clone();
    let mut t_tag = vec![false; k];
    let mut used = vec![false; k];
    for col in 0..n {
        let Some(pos) = (0..k).find(|&r| !used[r] && work[r].0.get(col)) else {
            continue;
        };
        used[pos] = true;
        let (pivot, pivot_tag) = work[pos].clone();
        for (r, (row, tag)) in work.iter_mut().enumerate() {
            if r != pos && !used[r] && row.get(col) {
                row.xor_assign(&pivot);
                for (a, b) in tag.iter_mut().zip(&pivot_tag) {
                    *a ^= b;
                }
            }
        }
        if t.get(col) {
            t.xor_assign(&pivot);
            for (a, b) in t_tag.iter_mut().zip(&pivot_tag) {
                *a ^= b;
            }
        }
    }
    t.is_zero().then_some(t_tag)
}

/// Decompose the quadratic part through a symplectic basis of the
/// alternating form, then resolve the linear term through the span dichotomy.
pub fn symplectic_decompose(p: &QuadraticPoly) -> SymplecticDecomposition {
    let n = p.n();
    let b = p.alternating_form();

    // Symplectic Gram-Schmidt: peel off hyperbolic pairs of the form, making
    // everything else orthogonal to each pair.
    let mut basis: Vec<F2Vec> = (0..n).map(|i| F2Vec::unit(n, i)).collect();
    let mut pairs: Vec<(F2Vec, F2Vec)> = Vec::new();
    loop {
        let mut found = None;
        for i in 0..basis.len() {
            let bu = b.mul_vec(&basis[i]);
            if let Some(off) = basis[i + 1..].iter().position(|w| w.dot(&bu)) {
                found = Some((i, i + 1 + off));
                break;
            }
        }
        let Some((i, j)) = found else { break };
        let v = basis.remove(j);
        let u = basis.remove(i);
        let bu = b.mul_vec(&u);
        let bv = b.mul_vec(&v);
        for w in &mut basis {
            if w.dot(&bv) {
                w.xor_assign(&u);
            }
            if w.dot(&bu) {
                w.xor_assign(&v);
            }
        }
        pairs.push((u, v));
    }
    let h = pairs.len();

    // Columns u1 v1 ... uh vh then the radical; the dual basis rows give the
    // product forms.
    let mut s = F2Matrix::zeros(n, n);
    let mut col = 0;
    for (u, v) in &pairs {
        for r in 0..n {
            s.set(r, col, u.get(r));
            s.set(r, col + 1, v.get(r));
        }
        col += 2;
    }
    for w in &basis {
        for r in 0..n {
            s.set(r, col, w.get(r));
        }
        col += 1;
    }
    let (ells, rs): (Vec<F2Vec>, Vec<F2Vec>) = if h > 0 {
        let t = s.inverse().expect("basis change is invertible");
        (
            (0..h).map(|j| t.row(2 * j).clone()).collect(),
            (0..h).map(|j| t.row(2 * j + 1).clone()).collect(),
        )
    } else {
        (Vec::new(), Vec::new())
    };

    // Over F2 the products contribute squares, i.e. a linear correction
    // w_i = sum_j l_j[i] r_j[i]; fold it into the linear term.
    let mut adjusted = p.linear().clone();
    for i in 0..n {
        let mut wi = false;
        for j in 0..h {
            wi ^= ells[j].get(i) && rs[j].get(i);
        }
        if wi {
            let cur = adjusted.get(i);
            adjusted.set(i, !cur);
        }
    }

    let span: Vec<F2Vec> = ells.iter().chain(&rs).cloned().collect();
    match express_in_span(&span, &adjusted) {
        Some(coeffs) if h > 0 || adjusted.is_zero() => {
            // adjusted = sum_j c_j l_j + d_j r_j; the rewrite pairs d with the
            // l-factor and c with the r-factor, and b' = sum c_j d_j + b.
            let cs = &coeffs[..h];
            let ds = &coeffs[h..];
            let mut b_prime = p.constant();
            for j in 0..h {
                b_prime ^= cs[j] && ds[j];
            }
            SymplecticDecomposition {
                h,
                ell_consts: ds.to_vec(),
                r_consts: cs.to_vec(),
                ells,
                rs,
                b_prime,
                residual: None,
            }
        }
        _ => SymplecticDecomposition {
            h,
            ell_consts: vec![false; h],
            r_consts: vec![false; h],
            ells,
            rs,
            b_prime: p.constant(),
            residual: Some(adjusted),
        },
    }
}

/// Exact probability that `p(x) = 0` over uniform `x`, from the closed form:
/// `1/2 +- 2^{-h-1}` when the adjusted linear term lies in the span of the
/// product forms, `1/2` when it does not, and the affine conventions at
/// `h = 0` (probability `1/2` when the linear part is nonzero, else `1 - b`).
pub fn zero_probability(p: &QuadraticPoly) -> BigRational {
    let d = symplectic_decompose(p);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match (&d.residual, d.h) {
        (Some(_), _) => half,
        (None, 0) => {
            // Affine with zero linear part: constant polynomial b'.
            if d.b_prime {
                BigRational::zero()
            } else {
                BigRational::one()
            }
        }
        (None, h) => {
            let offset = BigRational::new(BigInt::one(), BigInt::from(2) << h);
            if d.b_prime {
                half - offset
            } else {
                half + offset
            }
        }
    }
}

/// Exact zero count by enumerating all inputs; the oracle for the closed
/// form.
pub fn zero_count_bruteforce(p: &QuadraticPoly) -> Result<u64> {
    if p.n() > 24 {
        return Err(Error::SizeLimit(
            "brute-force zero count supports n <= 24".into(),
        ));
    }
    // Row masks for a tight inner loop.
    let n = p.n();
    let rows: Vec<u64> = (0..n)
        .map(|i| {
            let mut mask = 0u64;
            for j in i + 1..n {
                if p.quad().get(i, j) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    let lin = {
        let mut mask = 0u64;
        for i in 0..n {
            if p.linear().get(i) {
                mask |= 1 << i;
            }
        }
        mask
    };
    let mut zeros = 0u64;
    for x in 0..1u64 << n {
        let mut acc = (lin & x).count_ones() & 1;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc ^= (rows[i] & x).count_ones() & 1;
        }
        // p(x) = acc xor b; zero iff they agree.
        if (acc == 1) == p.constant() {
            zeros += 1;
        }
    }
    Ok(zeros)
}

/// Outcome of probing the correlation between `p` and one of its variables.
#[derive(Debug, Clone)]
pub enum CorrelationStructure {
    /// `|Pr[p = x_i] - 1/2| < epsilon`.
    NoCorrelation { bias: BigRational },
    /// The correlation forces low symplectic rank; the decomposition of `p`
    /// is exhibited together with whether `e_i` lies in its span.
    LowRank {
        bias: BigRational,
        h: usize,
        rank_threshold: usize,
        ei_in_span: bool,
        decomposition: SymplecticDecomposition,
    },
}

/// Apply the low-rank structure corollary to `p(x) + x_i`: report whether
/// the correlation with `x_i` reaches `epsilon`, and exhibit the structure
/// when it does. The rank threshold is `r = ceil(log2(1/epsilon)) + 1`.
pub fn correlation_structure(
    p: &QuadraticPoly,
    i: usize,
    epsilon: f64,
) -> Result<CorrelationStructure> {
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be in (0, 1/2], got {epsilon}"
        )));
    }
    if i >= p.n() {
        return Err(Error::OutOfDomain {
            index: i,
            domain: p.n(),
        });
    }
    let rank_threshold = (1.0 / epsilon).log2().ceil() as usize + 1;
    let shifted = p.plus_variable(i);
    let prob = zero_probability(&shifted);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let bias = if prob >= half {
        prob - half
    } else {
        half - prob
    };
    let bias_f = bias.numer().to_string().parse::<f64>().unwrap()
        / bias.denom().to_string().parse::<f64>().unwrap();
    if bias_f < epsilon {
        return Ok(CorrelationStructure::NoCorrelation { bias });
    }
    let decomposition = symplectic_decompose(p);
    let ei = F2Vec::unit(p.n(), i);
    Ok(CorrelationStructure::LowRank {
        bias,
        h: decomposition.h,
        rank_threshold,
        ei_in_span: decomposition.in_span(&ei),
        decomposition,
    })
}
