//! Structural analysis of n-ary algebras: ideals, simplicity verdicts, the
//! space of partial-evaluation operators, and exhaustive search over all
//! structure tables of a given shape on a finite field.

use std::fmt;

use rayon::prelude::*;

use crate::alt_form::{basis_vectors, check_type, AltForm};
use crate::combinatorics::increasing_tuples;
use crate::error::{Error, Result};
use crate::guard::{Guards, MAX_SEARCH_CANDIDATES};
use crate::linalg::{enumerate_subspaces, Matrix, Subspace};
use crate::scalar::{vec_is_zero, Field, Scalar};

/// How a simplicity verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Every proper nonzero subspace was tested.
    Exhaustive,
    /// Ideal closures of a finite family of lines were inspected; fit to
    /// find ideals, not to certify their absence.
    ClosureHeuristic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// A proper nonzero ideal exists; `witness` carries one when the
    /// obstruction is an ideal rather than the dimension itself.
    NotSimple { witness: Option<Subspace> },
    SimpleCertified,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisVerdict {
    pub status: Status,
    pub method: Method,
}

impl fmt::Display for AnalysisVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let method = match self.method {
            Method::Exhaustive => "exhaustive",
            Method::ClosureHeuristic => "closure heuristic",
        };
        match &self.status {
            Status::NotSimple { witness: Some(w) } => {
                write!(f, "not simple: ideal {} ({})", w.describe(), method)
            }
            Status::NotSimple { witness: None } => {
                write!(f, "not simple: dimension at most 1")
            }
            Status::SimpleCertified => write!(f, "simple ({})", method),
            Status::Unknown => write!(f, "no ideal found ({}); simplicity undecided", method),
        }
    }
}

/// Whether `w` absorbs the structure in its last slot:
/// `mu(V, .., V, w) ⊆ w`. The free slots range over strictly increasing
/// basis tuples, which suffices by multilinearity and alternation.
pub fn is_ideal(mu: &AltForm, w: &Subspace) -> Result<bool> {
    mu.field().expect_eq(&w.field())?;
    if mu.dim() != w.ambient() {
        return Err(Error::DimMismatch {
            left: mu.dim(),
            right: w.ambient(),
        });
    }
    let n = mu.arity();
    if n == 0 {
        // Consistent with ideal_closure below: a constant structure is
        // absorbed exactly when its value already lies in the subspace.
        return w.contains(&mu.eval_basis(&[]));
    }
    let units = basis_vectors(mu.field(), mu.dim());
    for a in increasing_tuples(mu.dim(), n - 1) {
        for row in w.basis().row_vecs() {
            let mut args: Vec<&[Scalar]> = a.iter().map(|&i| units[i - 1].as_slice()).collect();
            args.push(&row);
            let image = mu.eval_unchecked(&args);
            if !w.contains(&image)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest ideal containing `start`: alternately closes under the structure
/// until the dimension stabilizes.
pub fn ideal_closure(mu: &AltForm, start: &Subspace) -> Result<Subspace> {
    mu.field().expect_eq(&start.field())?;
    if mu.dim() != start.ambient() {
        return Err(Error::DimMismatch {
            left: mu.dim(),
            right: start.ambient(),
        });
    }
    let n = mu.arity();
    if n == 0 {
        return start.sum(&Subspace::from_vectors(
            mu.field(),
            mu.dim(),
            &[mu.eval_basis(&[])],
        )?);
    }
    let units = basis_vectors(mu.field(), mu.dim());
    let mut current = start.clone();
    loop {
        let mut images = Vec::new();
        for a in increasing_tuples(mu.dim(), n - 1) {
            for row in current.basis().row_vecs() {
                let mut args: Vec<&[Scalar]> =
                    a.iter().map(|&i| units[i - 1].as_slice()).collect();
                args.push(&row);
                let image = mu.eval_unchecked(&args);
                if !vec_is_zero(&image) {
                    images.push(image);
                }
            }
        }
        let next = current.sum(&Subspace::from_vectors(mu.field(), mu.dim(), &images)?)?;
        if next.dim() == current.dim() {
            return Ok(next);
        }
        current = next;
    }
}

/// Looks for a proper nonzero ideal. Over a finite field within the
/// enumeration guards this is exhaustive: `Ok((None, Exhaustive))` certifies
/// that none exists. Over the rationals it closes coordinate lines and
/// `seed`-derived random lines and returns the proper closure of smallest
/// dimension, so `Ok((None, ClosureHeuristic))` proves nothing.
pub fn find_nontrivial_ideal(
    mu: &AltForm,
    guards: &Guards,
    seed: u64,
) -> Result<(Option<Subspace>, Method)> {
    let dim = mu.dim();
    match mu.field() {
        Field::Prime(_) => {
            for d in 1..dim {
                for w in enumerate_subspaces(mu.field(), dim, d, guards)? {
                    if is_ideal(mu, &w)? {
                        return Ok((Some(w), Method::Exhaustive));
                    }
                }
            }
            Ok((None, Method::Exhaustive))
        }
        Field::Rational => {
            let mut lines: Vec<Vec<Scalar>> = basis_vectors(mu.field(), dim);
            let mut rng = crate::generate::seeded_rng(seed);
            for _ in 0..32 {
                let v: Vec<Scalar> = (0..dim)
                    .map(|_| crate::generate::draw_scalar(&mut rng, mu.field()))
                    .collect();
                if !vec_is_zero(&v) {
                    lines.push(v);
                }
            }
            let mut best: Option<Subspace> = None;
            for line in &lines {
                let start = Subspace::from_vectors(mu.field(), dim, std::slice::from_ref(line))?;
                let closure = ideal_closure(mu, &start)?;
                if closure.dim() == 0 || closure.dim() == dim {
                    continue;
                }
                if best.as_ref().is_none_or(|b| closure.dim() < b.dim()) {
                    best = Some(closure);
                }
            }
            Ok((best, Method::ClosureHeuristic))
        }
    }
}

/// Simplicity verdict: an algebra is simple when its dimension exceeds one
/// and it has no proper nonzero ideal. Dimension at most one is never
/// simple; otherwise the verdict inherits the strength of the ideal search.
pub fn is_simple(mu: &AltForm, guards: &Guards, seed: u64) -> Result<AnalysisVerdict> {
    if mu.dim() <= 1 {
        return Ok(AnalysisVerdict {
            status: Status::NotSimple { witness: None },
            method: Method::Exhaustive,
        });
    }
    let (found, method) = find_nontrivial_ideal(mu, guards, seed)?;
    let status = match (found, method) {
        (Some(w), _) => Status::NotSimple { witness: Some(w) },
        (None, Method::Exhaustive) => Status::SimpleCertified,
        (None, Method::ClosureHeuristic) => Status::Unknown,
    };
    Ok(AnalysisVerdict { status, method })
}

/// Span of the partial-evaluation operators `v -> mu(e_{a_1}, .., e_{a_{n-1}}, v)`
/// over all increasing basis tuples, as a subspace of the dim^2-dimensional
/// operator space (matrices flattened row by row).
pub fn operator_space(mu: &AltForm) -> Result<Subspace> {
    let n = mu.arity();
    if n == 0 {
        return Err(Error::Arity(
            "a constant induces no partial-evaluation operators".into(),
        ));
    }
    let dim = mu.dim();
    let mut flats = Vec::new();
    for a in increasing_tuples(dim, n - 1) {
        let op = mu.partial_insert_basis(&a)?;
        flats.push(flatten_operator(&op)?);
    }
    Subspace::from_vectors(mu.field(), dim * dim, &flats)
}

/// Matrix of an arity-1 form in the standard basis, rows flattened
/// left to right.
fn flatten_operator(op: &AltForm) -> Result<Vec<Scalar>> {
    if op.arity() != 1 {
        return Err(Error::Arity(format!(
            "expected an arity-1 form, got arity {}",
            op.arity()
        )));
    }
    let dim = op.dim();
    let mut flat = vec![Scalar::zero(op.field()); dim * dim];
    for j in 1..=dim {
        let col = op.eval_basis(&[j]);
        for i in 0..dim {
            flat[i * dim + (j - 1)] = col[i].clone();
        }
    }
    Ok(flat)
}

fn unflatten(field: Field, dim: usize, flat: &[Scalar]) -> Matrix {
    let mut m = Matrix::zero(field, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            *m.at_mut(i, j) = flat[i * dim + j].clone();
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DefectReport {
    /// Every pair of operators from the reduced basis commutes.
    pub all_zero: bool,
    /// Largest rank among the pairwise commutators.
    pub max_rank: usize,
}

/// Pairwise commutators `D_i D_j - D_j D_i` over the reduced basis of the
/// operator space.
pub fn commutator_defect(mu: &AltForm) -> Result<DefectReport> {
    let space = operator_space(mu)?;
    let dim = mu.dim();
    let ops: Vec<Matrix> = space
        .basis()
        .row_vecs()
        .into_iter()
        .map(|flat| unflatten(mu.field(), dim, &flat))
        .collect();
    let mut all_zero = true;
    let mut max_rank = 0;
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let defect = ops[i].mul(&ops[j])?.sub(&ops[j].mul(&ops[i])?)?;
            if !defect.is_zero() {
                all_zero = false;
                max_rank = max_rank.max(defect.rank());
            }
        }
    }
    Ok(DefectReport { all_zero, max_rank })
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub total_candidates: u128,
    /// Structures passing the type condition, in enumeration order, each
    /// with its simplicity verdict.
    pub survivors: Vec<(AltForm, AnalysisVerdict)>,
}

/// Enumerates every structure table of the given shape over a prime field
/// and keeps those of type `(r, l)`. The candidate count is
/// `p^(C(dim, arity) * dim)`; the resource guard rejects counts beyond
/// 2^20 unless lifted.
pub fn exhaustive_type_search(
    field: Field,
    dim: usize,
    arity: usize,
    r: usize,
    l: usize,
    guards: &Guards,
) -> Result<SearchReport> {
    let p = match field {
        Field::Prime(p) => p as u128,
        Field::Rational => {
            return Err(Error::BadArgument(
                "exhaustive search needs a finite field".into(),
            ))
        }
    };
    if arity == 0 || arity > dim {
        return Err(Error::Arity(format!(
            "search needs 1 <= arity <= dim, got arity {} in dimension {}",
            arity, dim
        )));
    }
    if !(l <= r && r < arity) {
        return Err(Error::RangeViolation { r, l, n: arity });
    }
    let cells = increasing_tuples(dim, arity);
    let digits = cells.len() * dim;
    let total = checked_power(p, digits).ok_or_else(|| {
        Error::ResourceGuard(format!(
            "search space {}^{} exceeds the representable candidate count",
            p, digits
        ))
    })?;
    if guards.enforce && total > MAX_SEARCH_CANDIDATES {
        return Err(Error::ResourceGuard(format!(
            "search space has {} candidates, above the limit of {}",
            total, MAX_SEARCH_CANDIDATES
        )));
    }
    let total_usize = usize::try_from(total).map_err(|_| {
        Error::ResourceGuard(format!(
            "search space has {} candidates, too many to iterate",
            total
        ))
    })?;
    let survivors: Vec<AltForm> = (0..total_usize)
        .into_par_iter()
        .map(|index| -> Result<Option<AltForm>> {
            let mu = decode_candidate(field, dim, arity, &cells, index as u128)?;
            if check_type(&mu, r, l, false)?.is_none() {
                Ok(Some(mu))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut with_verdicts = Vec::with_capacity(survivors.len());
    for mu in survivors {
        let verdict = is_simple(&mu, guards, 0)?;
        with_verdicts.push((mu, verdict));
    }
    Ok(SearchReport {
        total_candidates: total,
        survivors: with_verdicts,
    })
}

fn checked_power(base: u128, exponent: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exponent {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Digit `index` in base p encodes the table cell by cell in increasing
/// tuple order, coordinates first within a cell, least significant first.
fn decode_candidate(
    field: Field,
    dim: usize,
    arity: usize,
    cells: &[Vec<usize>],
    index: u128,
) -> Result<AltForm> {
    let p = match field {
        Field::Prime(p) => p as u128,
        Field::Rational => unreachable!("search is finite-field only"),
    };
    let mut rest = index;
    let mut entries = Vec::new();
    for cell in cells {
        let mut value = Vec::with_capacity(dim);
        for _ in 0..dim {
            let digit = (rest % p) as i64;
            rest /= p;
            value.push(Scalar::from_integer(field, digit));
        }
        entries.push((cell.clone(), value));
    }
    AltForm::from_table(field, dim, arity, entries)
}
