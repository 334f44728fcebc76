//! The exterior algebra over V with the Poisson superbracket induced by a
//! symmetric nondegenerate bilinear form, and the correspondence between
//! homogeneous elements and alternating structures on V.
//!
//! On vectors the bracket is the form itself, `[v, w] = (v, w)`; it extends
//! to monomials as an odd graded biderivation. With an element `m` of degree
//! n+1 one recovers an n-ary structure by iterated contraction,
//!
//! ```text
//! mu(a_1, ..., a_n) = [a_1, [a_2, [..., [a_n, m] ...]]]
//! ```
//!
//! and, fixing the first p arguments on basis vectors, the remaining
//! (n-p)-ary form satisfies
//!
//! ```text
//! mu(a_1, .., a_p, b_1, .., b_{n-p})
//!   = (-1)^{p(n-p)} [b_1, [..., [b_{n-p}, [a_1, [..., [a_p, m] ...]]] ...]]
//! ```
//!
//! The sign `(-1)^{p(n-p)}` is a convention fixed by the definition above
//! (moving the b-block of contractions past the a-block); it is pinned by a
//! unit test below.
//!
//! Everything here requires characteristic other than two: the bracket
//! squares vectors to `(v, v)`, which carries no information mod 2, and form
//! construction rejects GF(2) outright.

use std::collections::BTreeMap;
use std::fmt;

use crate::alt_form::{fmt_basis_tuple, AltForm, Violation};
use crate::combinatorics::{all_tuples, increasing_tuples, sort_with_sign};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{fmt_vec, vec_is_zero, zero_vec, Field, Scalar};

/// Symmetric nondegenerate bilinear form over a field of characteristic
/// other than two, stored as its Gram matrix on the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<BilinearForm> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimMismatch {
                left: matrix.rows(),
                right: matrix.cols(),
            });
        }
        if matrix.field().characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        for r in 0..matrix.rows() {
            for c in r + 1..matrix.cols() {
                if matrix.at(r, c) != matrix.at(c, r) {
                    return Err(Error::NotSymmetric {
                        row: r + 1,
                        col: c + 1,
                    });
                }
            }
        }
        let rank = matrix.rank();
        if rank != matrix.rows() {
            return Err(Error::DegenerateForm {
                rank,
                dim: matrix.rows(),
            });
        }
        Ok(BilinearForm { matrix })
    }

    pub fn identity(field: Field, dim: usize) -> Result<BilinearForm> {
        BilinearForm::new(Matrix::identity(field, dim))
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Gram entry on 1-based basis indices.
    pub fn pair(&self, i: usize, j: usize) -> &Scalar {
        self.matrix.at(i - 1, j - 1)
    }

    /// `(v, e_j)` for a coordinate vector and a 1-based basis index.
    pub fn pair_with_basis(&self, v: &[Scalar], j: usize) -> Scalar {
        let mut acc = Scalar::zero(self.field());
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            acc = &acc + &(x * self.matrix.at(i, j - 1));
        }
        acc
    }

    /// `(v, w)` on arbitrary coordinate vectors.
    pub fn apply(&self, v: &[Scalar], w: &[Scalar]) -> Result<Scalar> {
        if v.len() != self.dim() || w.len() != self.dim() {
            return Err(Error::DimMismatch {
                left: v.len(),
                right: w.len(),
            });
        }
        let mut acc = Scalar::zero(self.field());
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in w.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc = &acc + &(&(x * y) * self.matrix.at(i, j));
            }
        }
        Ok(acc)
    }
}

/// Homogeneity of an exterior element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// The zero element; it belongs to every degree.
    Zero,
    Pure(usize),
    Mixed,
}

/// Element of the exterior algebra over V, stored as a sparse sum of basis
/// monomials `e_{i_1} ^ ... ^ e_{i_k}` on strictly increasing index tuples;
/// the empty tuple is the scalar summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    field: Field,
    dim: usize,
    table: BTreeMap<Vec<usize>, Scalar>,
}

impl ExteriorElement {
    pub fn zero(field: Field, dim: usize) -> ExteriorElement {
        ExteriorElement {
            field,
            dim,
            table: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        field: Field,
        dim: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<ExteriorElement> {
        let mut out = ExteriorElement::zero(field, dim);
        for (key, coeff) in terms {
            for w in key.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::BadArgument(format!(
                        "monomial index tuple {:?} is not strictly increasing",
                        key
                    )));
                }
            }
            if key.iter().any(|&i| i == 0 || i > dim) {
                return Err(Error::BadArgument(format!(
                    "monomial index tuple {:?} out of range 1..={}",
                    key, dim
                )));
            }
            field.expect_eq(&coeff.field())?;
            if out.table.contains_key(&key) {
                return Err(Error::BadArgument(format!(
                    "duplicate monomial index tuple {:?}",
                    key
                )));
            }
            if !coeff.is_zero() {
                out.table.insert(key, coeff);
            }
        }
        Ok(out)
    }

    /// The monomial `e_{i_1} ^ ... ^ e_{i_k}` with coefficient one.
    pub fn basis_blade(field: Field, dim: usize, indices: &[usize]) -> Result<ExteriorElement> {
        ExteriorElement::from_terms(field, dim, vec![(indices.to_vec(), Scalar::one(field))])
    }

    /// Degree-1 element with the given coordinates.
    pub fn from_vector(field: Field, v: &[Scalar]) -> ExteriorElement {
        let mut out = ExteriorElement::zero(field, v.len());
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out.table.insert(vec![i + 1], x.clone());
            }
        }
        out
    }

    /// Coordinates of a degree-1 element; errors on any term of other degree.
    pub fn to_vector(&self) -> Result<Vec<Scalar>> {
        let mut v = zero_vec(self.field, self.dim);
        for (key, coeff) in &self.table {
            if key.len() != 1 {
                return Err(Error::NotHomogeneous(format!(
                    "expected a degree-1 element, found the monomial {}",
                    fmt_monomial(key)
                )));
            }
            v[key[0] - 1] = coeff.clone();
        }
        Ok(v)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn degree(&self) -> Degree {
        let mut iter = self.table.keys();
        match iter.next() {
            None => Degree::Zero,
            Some(first) => {
                let d = first.len();
                if iter.all(|k| k.len() == d) {
                    Degree::Pure(d)
                } else {
                    Degree::Mixed
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.table.iter()
    }

    fn add_term(&mut self, key: Vec<usize>, coeff: Scalar) {
        use std::collections::btree_map::Entry;
        match self.table.entry(key) {
            Entry::Vacant(slot) => {
                if !coeff.is_zero() {
                    slot.insert(coeff);
                }
            }
            Entry::Occupied(mut slot) => {
                let updated = slot.get() + &coeff;
                if updated.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(updated);
                }
            }
        }
    }

    pub fn add(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (key, coeff) in &other.table {
            out.add_term(key.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> ExteriorElement {
        let mut out = self.clone();
        for coeff in out.table.values_mut() {
            *coeff = -&*coeff;
        }
        out
    }

    pub fn sub(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Result<ExteriorElement> {
        self.field.expect_eq(&c.field())?;
        if c.is_zero() {
            return Ok(ExteriorElement::zero(self.field, self.dim));
        }
        let mut out = self.clone();
        for coeff in out.table.values_mut() {
            *coeff = &*coeff * c;
        }
        Ok(out)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.compatible(other)?;
        let mut out = ExteriorElement::zero(self.field, self.dim);
        for (ka, ca) in &self.table {
            for (kb, cb) in &other.table {
                if let Some((key, sign)) = wedge_key(ka, kb) {
                    let mut coeff = ca * cb;
                    if sign < 0 {
                        coeff = -&coeff;
                    }
                    out.add_term(key, coeff);
                }
            }
        }
        Ok(out)
    }

    fn compatible(&self, other: &ExteriorElement) -> Result<()> {
        self.field.expect_eq(&other.field)?;
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

/// Merges two strictly increasing index tuples into one, with the sign of
/// the interleaving permutation; `None` when they share an index.
fn wedge_key(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut joined = Vec::with_capacity(a.len() + b.len());
    joined.extend_from_slice(a);
    joined.extend_from_slice(b);
    sort_with_sign(&joined)
}

fn fmt_monomial(key: &[usize]) -> String {
    if key.is_empty() {
        return "1".into();
    }
    key.iter()
        .map(|i| format!("e{}", i))
        .collect::<Vec<_>>()
        .join("^")
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.table.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.table {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if key.is_empty() {
                write!(f, "{}", coeff)?;
            } else if coeff.is_one() {
                write!(f, "{}", fmt_monomial(key))?;
            } else {
                write!(f, "{} {}", coeff, fmt_monomial(key))?;
            }
        }
        Ok(())
    }
}

/// The Poisson superbracket on monomials:
///
/// ```text
/// [e_I, e_J] = sum_{s,t} (-1)^{(p-s) + (t-1)} (e_{i_s}, e_{j_t})
///              (e_I without i_s) ^ (e_J without j_t)
/// ```
///
/// with `p = |I|` and 1-based positions s, t. Scalar summands bracket to
/// zero on either side.
pub fn poisson_bracket(
    x: &ExteriorElement,
    y: &ExteriorElement,
    form: &BilinearForm,
) -> Result<ExteriorElement> {
    x.field.expect_eq(&y.field)?;
    x.field.expect_eq(&form.field())?;
    if x.dim != y.dim || x.dim != form.dim() {
        return Err(Error::DimMismatch {
            left: x.dim,
            right: if x.dim != y.dim { y.dim } else { form.dim() },
        });
    }
    let mut out = ExteriorElement::zero(x.field, x.dim);
    for (ki, ci) in &x.table {
        let p = ki.len();
        if p == 0 {
            continue;
        }
        for (kj, cj) in &y.table {
            let q = kj.len();
            if q == 0 {
                continue;
            }
            let base = ci * cj;
            for s in 0..p {
                for t in 0..q {
                    let g = form.pair(ki[s], kj[t]);
                    if g.is_zero() {
                        continue;
                    }
                    let rest_i = remove_at(ki, s);
                    let rest_j = remove_at(kj, t);
                    let (key, wsign) = match wedge_key(&rest_i, &rest_j) {
                        Some(kw) => kw,
                        None => continue,
                    };
                    let mut exponent = (p - 1 - s) + t;
                    if wsign < 0 {
                        exponent += 1;
                    }
                    let mut coeff = &base * g;
                    if exponent % 2 == 1 {
                        coeff = -&coeff;
                    }
                    out.add_term(key, coeff);
                }
            }
        }
    }
    Ok(out)
}

fn remove_at(key: &[usize], idx: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(key.len() - 1);
    out.extend_from_slice(&key[..idx]);
    out.extend_from_slice(&key[idx + 1..]);
    out
}

/// `[v_1, [v_2, [..., [v_m, x] ...]]]` for coordinate vectors, contracted
/// from the innermost (last) argument outward.
pub fn iterated_bracket(
    vectors: &[Vec<Scalar>],
    x: &ExteriorElement,
    form: &BilinearForm,
) -> Result<ExteriorElement> {
    let mut acc = x.clone();
    for v in vectors.iter().rev() {
        let lifted = ExteriorElement::from_vector(x.field, v);
        acc = poisson_bracket(&lifted, &acc, form)?;
    }
    Ok(acc)
}

fn iterated_bracket_basis(
    indices: &[usize],
    x: &ExteriorElement,
    form: &BilinearForm,
) -> Result<ExteriorElement> {
    let mut acc = x.clone();
    let one = Scalar::one(x.field);
    for &i in indices.iter().rev() {
        let lifted = ExteriorElement::from_terms(x.field, x.dim, vec![(vec![i], one.clone())])?;
        acc = poisson_bracket(&lifted, &acc, form)?;
    }
    Ok(acc)
}

fn expect_structure_degree(mu_tilde: &ExteriorElement, arity: usize) -> Result<()> {
    match mu_tilde.degree() {
        Degree::Zero => Ok(()),
        Degree::Pure(d) if d == arity + 1 => Ok(()),
        Degree::Pure(d) => Err(Error::Arity(format!(
            "element of degree {} encodes a structure of arity {}, not {}",
            d,
            d.saturating_sub(1),
            arity
        ))),
        Degree::Mixed => Err(Error::NotHomogeneous(
            "structure encoding requires a homogeneous element".into(),
        )),
    }
}

/// Recovers the n-ary structure encoded by a degree-(n+1) element:
/// `mu(a_1, .., a_n) = [a_1, [.., [a_n, mu_tilde] ..]]`. The zero element
/// yields the zero structure of the requested arity.
pub fn structure_from_exterior(
    mu_tilde: &ExteriorElement,
    form: &BilinearForm,
    arity: usize,
) -> Result<AltForm> {
    mu_tilde.field.expect_eq(&form.field())?;
    if mu_tilde.dim != form.dim() {
        return Err(Error::DimMismatch {
            left: mu_tilde.dim,
            right: form.dim(),
        });
    }
    expect_structure_degree(mu_tilde, arity)?;
    let (field, dim) = (mu_tilde.field, mu_tilde.dim);
    let mut entries = Vec::new();
    for key in increasing_tuples(dim, arity) {
        let contracted = iterated_bracket_basis(&key, mu_tilde, form)?;
        let value = contracted.to_vector()?;
        if !vec_is_zero(&value) {
            entries.push((key, value));
        }
    }
    AltForm::from_table(field, dim, arity, entries)
}

/// Whether the bilinear form pairs `mu` into a totally alternating
/// (n+1)-linear function, `(mu(a_1, .., a_n), b)` alternating in all n+1
/// slots. Since the first n slots alternate by construction, the check is
/// antisymmetry under the swap of the last two slots, over all basis tuples.
pub fn check_invariance(mu: &AltForm, form: &BilinearForm) -> Result<Option<Violation>> {
    mu.field().expect_eq(&form.field())?;
    if mu.dim() != form.dim() {
        return Err(Error::DimMismatch {
            left: mu.dim(),
            right: form.dim(),
        });
    }
    let n = mu.arity();
    if n == 0 {
        return Ok(None);
    }
    let dim = mu.dim();
    for a in all_tuples(dim, n) {
        let image = mu.eval_basis(&a);
        for b in 1..=dim {
            let lhs = form.pair_with_basis(&image, b);
            let mut swapped = a.clone();
            let last = swapped[n - 1];
            swapped[n - 1] = b;
            let rhs = form.pair_with_basis(&mu.eval_basis(&swapped), last);
            if lhs != -&rhs {
                return Ok(Some(Violation {
                    location: format!("a = {}, b = e{}", fmt_basis_tuple(&a), b),
                    lhs: format!("(mu(a), b) = {}", lhs),
                    rhs: format!("-(mu(a_1..a_{{n-1}}, b), a_n) = {}", -&rhs),
                }));
            }
        }
    }
    Ok(None)
}

/// Encodes an invariant structure as a degree-(n+1) element, inverting
/// `structure_from_exterior`. Fails with the invariance witness when `mu` is
/// not invariant for `form`; for invariant structures the encoding exists
/// and is unique, which the linear solve verifies.
pub fn exterior_from_structure(mu: &AltForm, form: &BilinearForm) -> Result<ExteriorElement> {
    if let Some(witness) = check_invariance(mu, form)? {
        return Err(Error::NotInvariant {
            witness: witness.to_string(),
        });
    }
    let (field, dim, n) = (mu.field(), mu.dim(), mu.arity());
    if mu.is_zero() {
        return Ok(ExteriorElement::zero(field, dim));
    }
    // Unknowns: one coefficient per increasing (n+1)-tuple. Equations: every
    // value coordinate of the recovered structure on every increasing
    // n-tuple.
    let blades = increasing_tuples(dim, n + 1);
    let arg_keys = increasing_tuples(dim, n);
    let mut columns: Vec<AltForm> = Vec::with_capacity(blades.len());
    for blade in &blades {
        let unit = ExteriorElement::basis_blade(field, dim, blade)?;
        columns.push(structure_from_exterior(&unit, form, n)?);
    }
    let mut rows = Vec::with_capacity(arg_keys.len() * dim);
    let mut rhs = Vec::with_capacity(arg_keys.len() * dim);
    for key in &arg_keys {
        let target = mu.eval_basis(key);
        let per_blade: Vec<Vec<Scalar>> =
            columns.iter().map(|c| c.eval_basis(key)).collect();
        for coord in 0..dim {
            rows.push(
                per_blade
                    .iter()
                    .map(|v| v[coord].clone())
                    .collect::<Vec<_>>(),
            );
            rhs.push(target[coord].clone());
        }
    }
    let system = Matrix::from_rows(field, rows)?;
    let coeffs = system.solve_unique(&rhs)?;
    ExteriorElement::from_terms(
        field,
        dim,
        blades.into_iter().zip(coeffs).collect::<Vec<_>>(),
    )
}

/// Bracket compatibility between the two calculi: for structures L, K of
/// arities l, k >= 0 encoded by homogeneous elements, the iterated
/// contraction of `[L~, K~]` recovers the bracket of L and K up to the fixed
/// sign,
///
/// ```text
/// [a_1, [..., [a_{l+k-1}, [L~, K~]] ...]] = -(-1)^{(k+1)(l+1)} [L, K](a_1, .., a_{l+k-1})
/// ```
///
/// checked on every strictly increasing basis tuple. Zero inputs hold
/// trivially; two degree-1 inputs are rejected since no bracket arity fits.
pub fn check_bracket_compat(
    l_tilde: &ExteriorElement,
    k_tilde: &ExteriorElement,
    form: &BilinearForm,
) -> Result<Option<Violation>> {
    if l_tilde.is_zero() || k_tilde.is_zero() {
        return Ok(None);
    }
    let (dl, dk) = match (l_tilde.degree(), k_tilde.degree()) {
        (Degree::Pure(a), Degree::Pure(b)) => (a, b),
        _ => {
            return Err(Error::NotHomogeneous(
                "bracket compatibility needs homogeneous inputs".into(),
            ))
        }
    };
    if dl == 0 || dk == 0 {
        return Err(Error::Arity(
            "scalar summands encode no structure; degrees must be at least 1".into(),
        ));
    }
    let (l, k) = (dl - 1, dk - 1);
    if l == 0 && k == 0 {
        return Err(Error::Arity(
            "two degree-1 elements encode two constants, whose bracket has no arity".into(),
        ));
    }
    let big_l = structure_from_exterior(l_tilde, form, l)?;
    let big_k = structure_from_exterior(k_tilde, form, k)?;
    let nr = big_l.nr_bracket(&big_k)?;
    let tilde_bracket = poisson_bracket(l_tilde, k_tilde, form)?;
    let m = l + k - 1;
    let field = l_tilde.field;
    let sign = if ((k + 1) * (l + 1)) % 2 == 0 { -1 } else { 1 };
    let sign_scalar = Scalar::from_integer(field, sign);
    for key in increasing_tuples(l_tilde.dim, m) {
        let contracted = iterated_bracket_basis(&key, &tilde_bracket, form)?;
        let lhs = contracted.to_vector()?;
        let mut rhs = zero_vec(field, l_tilde.dim);
        let nr_val = nr.eval_basis(&key);
        for (slot, x) in nr_val.iter().enumerate() {
            rhs[slot] = x * &sign_scalar;
        }
        if lhs != rhs {
            return Ok(Some(Violation {
                location: format!("arguments {}", fmt_basis_tuple(&key)),
                lhs: fmt_vec(&lhs),
                rhs: fmt_vec(&rhs),
            }));
        }
    }
    Ok(None)
}

/// Type condition computed entirely inside the exterior algebra: the
/// structure encoded by `mu_tilde` has type `(r, l)` exactly when
/// `[[a_1, [.., [a_r, mu_tilde]]], [b_1, [.., [b_l, mu_tilde]]]] = 0` for
/// all increasing basis tuples, including the empty ones at `r = l = 0`.
pub fn check_type_poisson(
    mu_tilde: &ExteriorElement,
    form: &BilinearForm,
    arity: usize,
    r: usize,
    l: usize,
) -> Result<Option<Violation>> {
    if !(l <= r && r < arity) {
        return Err(Error::RangeViolation { r, l, n: arity });
    }
    expect_structure_degree(mu_tilde, arity)?;
    mu_tilde.field.expect_eq(&form.field())?;
    if mu_tilde.dim != form.dim() {
        return Err(Error::DimMismatch {
            left: mu_tilde.dim,
            right: form.dim(),
        });
    }
    let dim = mu_tilde.dim;
    let b_parts: Vec<(Vec<usize>, ExteriorElement)> = increasing_tuples(dim, l)
        .into_iter()
        .map(|b| {
            let contracted = iterated_bracket_basis(&b, mu_tilde, form)?;
            Ok((b, contracted))
        })
        .collect::<Result<_>>()?;
    for a in increasing_tuples(dim, r) {
        let xa = iterated_bracket_basis(&a, mu_tilde, form)?;
        if xa.is_zero() {
            continue;
        }
        for (b, xb) in &b_parts {
            let bracket = poisson_bracket(&xa, xb, form)?;
            if !bracket.is_zero() {
                return Ok(Some(Violation {
                    location: format!("a = {}, b = {}", fmt_basis_tuple(&a), fmt_basis_tuple(b)),
                    lhs: format!("[[a, mu~], [b, mu~]] = {}", bracket),
                    rhs: "0".into(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alt_form::check_type;

    fn f() -> Field {
        Field::Rational
    }

    fn s(x: i64) -> Scalar {
        Scalar::from_integer(Field::Rational, x)
    }

    fn id3() -> BilinearForm {
        BilinearForm::identity(Field::Rational, 3).unwrap()
    }

    fn blade(dim: usize, idx: &[usize]) -> ExteriorElement {
        ExteriorElement::basis_blade(Field::Rational, dim, idx).unwrap()
    }

    /// mu(e1,e2)=e3, mu(e1,e3)=-e2, mu(e2,e3)=e1.
    fn cross() -> AltForm {
        AltForm::from_table(
            f(),
            3,
            2,
            vec![
                (vec![1, 2], vec![s(0), s(0), s(1)]),
                (vec![1, 3], vec![s(0), s(-1), s(0)]),
                (vec![2, 3], vec![s(1), s(0), s(0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn form_construction_rules() {
        let asym = Matrix::from_rows(
            f(),
            vec![vec![s(1), s(2)], vec![s(3), s(1)]],
        )
        .unwrap();
        assert!(matches!(
            BilinearForm::new(asym),
            Err(Error::NotSymmetric { row: 1, col: 2 })
        ));
        let degenerate = Matrix::from_rows(
            f(),
            vec![vec![s(1), s(2)], vec![s(2), s(4)]],
        )
        .unwrap();
        assert!(matches!(
            BilinearForm::new(degenerate),
            Err(Error::DegenerateForm { rank: 1, dim: 2 })
        ));
        let two = Field::prime(2).unwrap();
        assert!(matches!(
            BilinearForm::identity(two, 3),
            Err(Error::CharacteristicTwo)
        ));
    }

    #[test]
    fn wedge_products() {
        let e1 = blade(3, &[1]);
        let e2 = blade(3, &[2]);
        assert_eq!(e1.wedge(&e2).unwrap(), blade(3, &[1, 2]));
        assert_eq!(e2.wedge(&e1).unwrap(), blade(3, &[1, 2]).neg());
        assert!(e1.wedge(&e1).unwrap().is_zero());
        let e12 = blade(3, &[1, 2]);
        let e13 = blade(3, &[1, 3]);
        assert!(e12.wedge(&e13).unwrap().is_zero());
        // Scalar summand multiplies through.
        let c = ExteriorElement::from_terms(f(), 3, vec![(vec![], s(2))]).unwrap();
        assert_eq!(c.wedge(&e12).unwrap(), e12.scale(&s(2)).unwrap());
    }

    #[test]
    fn bracket_on_vectors_is_the_form() {
        let g = id3();
        let e1 = blade(3, &[1]);
        let e2 = blade(3, &[2]);
        let b11 = poisson_bracket(&e1, &e1, &g).unwrap();
        assert_eq!(b11, ExteriorElement::from_terms(f(), 3, vec![(vec![], s(1))]).unwrap());
        assert!(poisson_bracket(&e1, &e2, &g).unwrap().is_zero());
    }

    #[test]
    fn bracket_contraction_values() {
        let g = id3();
        let e123 = blade(3, &[1, 2, 3]);
        assert_eq!(
            poisson_bracket(&blade(3, &[1]), &e123, &g).unwrap(),
            blade(3, &[2, 3])
        );
        assert_eq!(
            poisson_bracket(&blade(3, &[2]), &e123, &g).unwrap(),
            blade(3, &[1, 3]).neg()
        );
        assert_eq!(
            poisson_bracket(&blade(3, &[3]), &e123, &g).unwrap(),
            blade(3, &[1, 2])
        );
        assert_eq!(
            poisson_bracket(&blade(3, &[1]), &blade(3, &[1, 2]), &g).unwrap(),
            blade(3, &[2])
        );
        assert_eq!(
            poisson_bracket(&blade(3, &[1, 2]), &blade(3, &[1, 3]), &g).unwrap(),
            blade(3, &[2, 3]).neg()
        );
        // Scalar summands are inert.
        let c = ExteriorElement::from_terms(f(), 3, vec![(vec![], s(5))]).unwrap();
        assert!(poisson_bracket(&c, &e123, &g).unwrap().is_zero());
    }

    #[test]
    fn bracket_graded_antisymmetry() {
        let g = id3();
        let xs = [blade(3, &[1]), blade(3, &[1, 2]), blade(3, &[1, 2, 3]), blade(3, &[2])];
        for x in &xs {
            for y in &xs {
                let (p, q) = match (x.degree(), y.degree()) {
                    (Degree::Pure(p), Degree::Pure(q)) => (p, q),
                    _ => unreachable!(),
                };
                let xy = poisson_bracket(x, y, &g).unwrap();
                let yx = poisson_bracket(y, x, &g).unwrap();
                let expected = if (p * q) % 2 == 0 { yx.neg() } else { yx };
                assert_eq!(xy, expected, "degrees {} {}", p, q);
            }
        }
    }

    #[test]
    fn bracket_super_jacobi() {
        let g = id3();
        let elems = [
            blade(3, &[1]),
            blade(3, &[2, 3]),
            blade(3, &[1, 3]),
            blade(3, &[1, 2, 3]),
        ];
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    let (p, q) = match (x.degree(), y.degree()) {
                        (Degree::Pure(p), Degree::Pure(q)) => (p, q),
                        _ => unreachable!(),
                    };
                    let lhs = poisson_bracket(x, &poisson_bracket(y, z, &g).unwrap(), &g).unwrap();
                    let first = poisson_bracket(&poisson_bracket(x, y, &g).unwrap(), z, &g).unwrap();
                    let mut second =
                        poisson_bracket(y, &poisson_bracket(x, z, &g).unwrap(), &g).unwrap();
                    if (p * q) % 2 == 1 {
                        second = second.neg();
                    }
                    assert_eq!(lhs, first.add(&second).unwrap());
                }
            }
        }
    }

    #[test]
    fn bracket_leibniz_in_second_slot() {
        // [x, y ^ z] = [x, y] ^ z + (-1)^{|x||y|} y ^ [x, z] for pure x, y.
        let g = id3();
        let x = blade(3, &[1]);
        let pairs = [
            (blade(3, &[1]), blade(3, &[2])),
            (blade(3, &[2]), blade(3, &[1, 3])),
            (blade(3, &[1, 2]), blade(3, &[3])),
        ];
        for (y, z) in &pairs {
            let (p, q) = match (x.degree(), y.degree()) {
                (Degree::Pure(p), Degree::Pure(q)) => (p, q),
                _ => unreachable!(),
            };
            let lhs = poisson_bracket(&x, &y.wedge(z).unwrap(), &g).unwrap();
            let first = poisson_bracket(&x, y, &g).unwrap().wedge(z).unwrap();
            let mut second = y.wedge(&poisson_bracket(&x, z, &g).unwrap()).unwrap();
            if (p * q) % 2 == 1 {
                second = second.neg();
            }
            assert_eq!(lhs, first.add(&second).unwrap());
        }
    }

    #[test]
    fn structure_from_top_blade() {
        let g = id3();
        let mu = structure_from_exterior(&blade(3, &[1, 2, 3]), &g, 2).unwrap();
        // The recovered structure is the negated cross product.
        assert_eq!(mu, cross().neg());
        // Arity must match the degree.
        assert!(structure_from_exterior(&blade(3, &[1, 2, 3]), &g, 3).is_err());
        // The zero element yields the zero structure of any arity.
        let z = structure_from_exterior(&ExteriorElement::zero(f(), 3), &g, 2).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn cross_is_invariant_and_encodes_to_top_blade() {
        let g = id3();
        let mu = cross();
        assert!(check_invariance(&mu, &g).unwrap().is_none());
        let tilde = exterior_from_structure(&mu, &g).unwrap();
        assert_eq!(tilde, blade(3, &[1, 2, 3]).neg());
        // Round trip.
        let back = structure_from_exterior(&tilde, &g, 2).unwrap();
        assert_eq!(back, mu);
    }

    #[test]
    fn invariance_failure_carries_witness() {
        let g = id3();
        // mu(e1,e2) = e1 pairs to a symmetric, not antisymmetric, function.
        let mu = AltForm::from_table(
            f(),
            3,
            2,
            vec![(vec![1, 2], vec![s(1), s(0), s(0)])],
        )
        .unwrap();
        let witness = check_invariance(&mu, &g).unwrap().expect("not invariant");
        assert!(witness.location.contains("a = "));
        assert!(matches!(
            exterior_from_structure(&mu, &g),
            Err(Error::NotInvariant { .. })
        ));
    }

    #[test]
    fn partial_contraction_sign_convention() {
        // Fixing p of n arguments on basis vectors matches the iterated
        // bracket up to (-1)^{p(n-p)}; here n = 2, p = 1, so the sign is -1.
        let g = id3();
        let mu_tilde = blade(3, &[1, 2, 3]);
        let mu = structure_from_exterior(&mu_tilde, &g, 2).unwrap();
        for a in 1..=3usize {
            let fixed = mu.partial_insert_basis(&[a]).unwrap();
            let xa = poisson_bracket(&blade(3, &[a]), &mu_tilde, &g).unwrap();
            for b in 1..=3usize {
                let via_bracket = poisson_bracket(&blade(3, &[b]), &xa, &g)
                    .unwrap()
                    .to_vector()
                    .unwrap();
                let direct = fixed.eval_basis(&[b]);
                let scaled: Vec<Scalar> = via_bracket.iter().map(|x| -x).collect();
                assert_eq!(direct, scaled, "a = {}, b = {}", a, b);
            }
        }
    }

    #[test]
    fn bracket_compatibility_on_small_elements() {
        let g = id3();
        assert!(check_bracket_compat(&blade(3, &[1, 2, 3]), &blade(3, &[1, 2, 3]), &g)
            .unwrap()
            .is_none());
        assert!(check_bracket_compat(&blade(3, &[1, 2]), &blade(3, &[1, 3]), &g)
            .unwrap()
            .is_none());
        assert!(check_bracket_compat(&blade(3, &[1, 2]), &blade(3, &[1, 2, 3]), &g)
            .unwrap()
            .is_none());
        // Degenerate shapes.
        assert!(check_bracket_compat(&ExteriorElement::zero(f(), 3), &blade(3, &[1]), &g)
            .unwrap()
            .is_none());
        assert!(check_bracket_compat(&blade(3, &[1]), &blade(3, &[2]), &g).is_err());
    }

    #[test]
    fn poisson_type_check_matches_structure_route() {
        let g = id3();
        let top = blade(3, &[1, 2, 3]);
        let mu = structure_from_exterior(&top, &g, 2).unwrap();
        for (r, l) in [(1usize, 0usize), (1, 1), (0, 0)] {
            let via_poisson = check_type_poisson(&top, &g, 2, r, l).unwrap().is_none();
            let via_nr = check_type(&mu, r, l, true).unwrap().is_none();
            assert_eq!(via_poisson, via_nr, "(r, l) = ({}, {})", r, l);
        }
        assert!(check_type_poisson(&top, &g, 2, 2, 0).is_err());
    }
}
