//! Deterministic construction of structures: top-form algebras from a
//! bilinear form, and seeded pseudo-random structure tables.
//!
//! Reproducibility contract: the generator is ChaCha20 with a 32-byte key
//! holding the seed as little-endian u64 in bytes 0..8 and zeros elsewhere,
//! stream and counter at their defaults. One `next_u32` draw per table
//! coordinate, keys in increasing lexicographic order, coordinates 1..dim
//! within a key. Rational draws are `(next_u32 mod 7) - 3`, so integers in
//! [-3, 3]; prime-field draws are `next_u32 mod p`. Any change here breaks
//! every stored golden output, so treat the layout as frozen.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::alt_form::AltForm;
use crate::combinatorics::increasing_tuples;
use crate::error::{Error, Result};
use crate::exterior::{structure_from_exterior, BilinearForm, ExteriorElement};
use crate::scalar::{Field, Scalar};

pub fn seeded_rng(seed: u64) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    ChaCha20Rng::from_seed(key)
}

pub fn draw_scalar(rng: &mut ChaCha20Rng, field: Field) -> Scalar {
    match field {
        Field::Rational => Scalar::from_integer(field, (rng.next_u32() % 7) as i64 - 3),
        Field::Prime(p) => Scalar::from_integer(field, (rng.next_u32() as u64 % p) as i64),
    }
}

/// Seeded random structure table: every coordinate of every table cell gets
/// one draw.
pub fn gen_random(arity: usize, dim: usize, field: Field, seed: u64) -> Result<AltForm> {
    if arity > dim {
        return Err(Error::Arity(format!(
            "arity {} exceeds dimension {}",
            arity, dim
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut entries = Vec::new();
    for key in increasing_tuples(dim, arity) {
        let value: Vec<Scalar> = (0..dim).map(|_| draw_scalar(&mut rng, field)).collect();
        entries.push((key, value));
    }
    AltForm::from_table(field, dim, arity, entries)
}

/// The n-ary structure on an (n+1)-dimensional space contracted from the
/// top monomial `e_1 ^ ... ^ e_{n+1}` with the given form. These structures
/// satisfy the full derivation identity.
pub fn gen_top_form_filippov(n: usize, form: &BilinearForm) -> Result<AltForm> {
    if n < 2 {
        return Err(Error::Arity(format!(
            "top-form construction needs arity at least 2, got {}",
            n
        )));
    }
    if form.dim() != n + 1 {
        return Err(Error::DimMismatch {
            left: form.dim(),
            right: n + 1,
        });
    }
    let indices: Vec<usize> = (1..=n + 1).collect();
    let top = ExteriorElement::basis_blade(form.field(), n + 1, &indices)?;
    structure_from_exterior(&top, form, n)
}

/// Top-form structure for the identity bilinear form.
pub fn gen_top_form_identity(n: usize, field: Field) -> Result<AltForm> {
    let form = BilinearForm::identity(field, n + 1)?;
    gen_top_form_filippov(n, &form)
}
