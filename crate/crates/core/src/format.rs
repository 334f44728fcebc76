//! Plain-text document format for structures, bilinear forms, and exterior
//! elements.
//!
//! ```text
//! # comment to end of line
//! field Q            (or: field F 5)
//! dim 3
//! arity 2
//! mu 1 2 : 3 1       (mu(e1, e2) = 1*e3; pairs of coordinate index, value)
//! mu 1 3 : 2 -1
//! form identity      (or: one `form row a b c` line per dimension)
//! ext 1 2 3 : -1     (exterior term; `ext : c` is a scalar summand)
//! ```
//!
//! The three headers must precede any body line. Structure keys and
//! exterior index tuples must be strictly increasing; violations are
//! reported with their line number. Serialization is canonical: headers,
//! then `mu` lines in key order with zero coordinates dropped, then the
//! form as explicit rows, then `ext` lines in key order. Parsing a
//! serialized document reproduces it byte for byte; a zero exterior part is
//! indistinguishable from an absent one.

use std::collections::BTreeSet;

use crate::alt_form::AltForm;
use crate::error::{Error, Result};
use crate::exterior::{BilinearForm, ExteriorElement};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    /// Always present; a document without `mu` lines holds the zero
    /// structure of the declared arity.
    pub structure: AltForm,
    pub form: Option<BilinearForm>,
    pub exterior: Option<ExteriorElement>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("{} must be a nonnegative integer, got `{}`", what, token)))
}

fn parse_index(line: usize, token: &str) -> Result<usize> {
    let idx = parse_usize(line, token, "basis index")?;
    if idx == 0 {
        return Err(parse_err(line, "basis indices are 1-based"));
    }
    Ok(idx)
}

fn parse_scalar(line: usize, field: Field, token: &str) -> Result<Scalar> {
    Scalar::parse(field, token).map_err(|e| parse_err(line, e.to_string()))
}

fn check_increasing(line: usize, indices: &[usize], dim: usize) -> Result<()> {
    for w in indices.windows(2) {
        if w[0] >= w[1] {
            return Err(parse_err(
                line,
                format!("indices {:?} must be strictly increasing", indices),
            ));
        }
    }
    if let Some(&bad) = indices.iter().find(|&&i| i > dim) {
        return Err(parse_err(
            line,
            format!("basis index {} exceeds the dimension {}", bad, dim),
        ));
    }
    Ok(())
}

pub fn parse(input: &str) -> Result<AlgebraDocument> {
    let mut field: Option<Field> = None;
    let mut dim: Option<usize> = None;
    let mut arity: Option<usize> = None;
    let mut mu_entries: Vec<(Vec<usize>, Vec<Scalar>)> = Vec::new();
    let mut mu_keys: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut form_identity = false;
    let mut form_rows: Vec<Vec<Scalar>> = Vec::new();
    let mut ext_terms: Vec<(Vec<usize>, Scalar)> = Vec::new();
    let mut ext_keys: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut last_line = 0;

    for (idx, raw) in input.lines().enumerate() {
        let no = idx + 1;
        last_line = no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "field" => {
                if field.is_some() {
                    return Err(parse_err(no, "duplicate `field` header"));
                }
                field = Some(match &tokens[1..] {
                    ["Q"] => Field::Rational,
                    ["F", p] => {
                        let p = p.parse::<u64>().map_err(|_| {
                            parse_err(no, format!("`{}` is not a prime modulus", p))
                        })?;
                        Field::prime(p).map_err(|e| parse_err(no, e.to_string()))?
                    }
                    _ => {
                        return Err(parse_err(
                            no,
                            "expected `field Q` or `field F <prime>`",
                        ))
                    }
                });
            }
            "dim" => {
                if dim.is_some() {
                    return Err(parse_err(no, "duplicate `dim` header"));
                }
                if tokens.len() != 2 {
                    return Err(parse_err(no, "expected `dim <n>`"));
                }
                let d = parse_usize(no, tokens[1], "dimension")?;
                if d == 0 {
                    return Err(parse_err(no, "dimension must be at least 1"));
                }
                dim = Some(d);
            }
            "arity" => {
                if arity.is_some() {
                    return Err(parse_err(no, "duplicate `arity` header"));
                }
                if tokens.len() != 2 {
                    return Err(parse_err(no, "expected `arity <n>`"));
                }
                arity = Some(parse_usize(no, tokens[1], "arity")?);
            }
            "mu" | "form" | "ext" => {
                let (field, dim, arity) = match (field, dim, arity) {
                    (Some(f), Some(d), Some(a)) => (f, d, a),
                    _ => {
                        return Err(parse_err(
                            no,
                            "`field`, `dim`, and `arity` headers must precede body lines",
                        ))
                    }
                };
                match tokens[0] {
                    "mu" => {
                        let sep = tokens
                            .iter()
                            .position(|t| *t == ":")
                            .ok_or_else(|| parse_err(no, "`mu` line needs a `:` separator"))?;
                        let key: Vec<usize> = tokens[1..sep]
                            .iter()
                            .map(|t| parse_index(no, t))
                            .collect::<Result<_>>()?;
                        check_increasing(no, &key, dim)?;
                        if key.len() != arity {
                            return Err(parse_err(
                                no,
                                format!(
                                    "key has {} indices, the declared arity is {}",
                                    key.len(),
                                    arity
                                ),
                            ));
                        }
                        if !mu_keys.insert(key.clone()) {
                            return Err(parse_err(
                                no,
                                format!("duplicate structure key {:?}", key),
                            ));
                        }
                        let pairs = &tokens[sep + 1..];
                        if pairs.is_empty() || !pairs.len().is_multiple_of(2) {
                            return Err(parse_err(
                                no,
                                "value must be written as pairs `<coordinate> <scalar>`",
                            ));
                        }
                        let mut value = vec![Scalar::zero(field); dim];
                        let mut seen = BTreeSet::new();
                        for pair in pairs.chunks(2) {
                            let coord = parse_index(no, pair[0])?;
                            if coord > dim {
                                return Err(parse_err(
                                    no,
                                    format!("coordinate {} exceeds the dimension {}", coord, dim),
                                ));
                            }
                            if !seen.insert(coord) {
                                return Err(parse_err(
                                    no,
                                    format!("coordinate {} appears twice", coord),
                                ));
                            }
                            value[coord - 1] = parse_scalar(no, field, pair[1])?;
                        }
                        mu_entries.push((key, value));
                    }
                    "form" => match &tokens[1..] {
                        ["identity"] => {
                            if form_identity || !form_rows.is_empty() {
                                return Err(parse_err(no, "conflicting form declarations"));
                            }
                            form_identity = true;
                        }
                        ["row", ..] => {
                            if form_identity {
                                return Err(parse_err(no, "conflicting form declarations"));
                            }
                            let entries = &tokens[2..];
                            if entries.len() != dim {
                                return Err(parse_err(
                                    no,
                                    format!(
                                        "form row has {} entries, expected {}",
                                        entries.len(),
                                        dim
                                    ),
                                ));
                            }
                            if form_rows.len() == dim {
                                return Err(parse_err(
                                    no,
                                    format!("more than {} form rows", dim),
                                ));
                            }
                            let row: Vec<Scalar> = entries
                                .iter()
                                .map(|t| parse_scalar(no, field, t))
                                .collect::<Result<_>>()?;
                            form_rows.push(row);
                        }
                        _ => {
                            return Err(parse_err(
                                no,
                                "expected `form identity` or `form row <entries>`",
                            ))
                        }
                    },
                    "ext" => {
                        let sep = tokens
                            .iter()
                            .position(|t| *t == ":")
                            .ok_or_else(|| parse_err(no, "`ext` line needs a `:` separator"))?;
                        let key: Vec<usize> = tokens[1..sep]
                            .iter()
                            .map(|t| parse_index(no, t))
                            .collect::<Result<_>>()?;
                        check_increasing(no, &key, dim)?;
                        if !ext_keys.insert(key.clone()) {
                            return Err(parse_err(
                                no,
                                format!("duplicate exterior key {:?}", key),
                            ));
                        }
                        let coeff = match &tokens[sep + 1..] {
                            [c] => parse_scalar(no, field, c)?,
                            _ => {
                                return Err(parse_err(
                                    no,
                                    "`ext` line takes exactly one coefficient after `:`",
                                ))
                            }
                        };
                        ext_terms.push((key, coeff));
                    }
                    _ => unreachable!(),
                }
            }
            other => {
                return Err(parse_err(no, format!("unknown directive `{}`", other)));
            }
        }
    }

    let eof = last_line + 1;
    let field = field.ok_or_else(|| parse_err(eof, "missing `field` header"))?;
    let dim = dim.ok_or_else(|| parse_err(eof, "missing `dim` header"))?;
    let arity = arity.ok_or_else(|| parse_err(eof, "missing `arity` header"))?;

    let structure = AltForm::from_table(field, dim, arity, mu_entries)?;
    let form = if form_identity {
        Some(BilinearForm::identity(field, dim)?)
    } else if !form_rows.is_empty() {
        if form_rows.len() != dim {
            return Err(parse_err(
                eof,
                format!("found {} form rows, expected {}", form_rows.len(), dim),
            ));
        }
        Some(BilinearForm::new(Matrix::from_rows(field, form_rows)?)?)
    } else {
        None
    };
    let exterior = if ext_terms.is_empty() {
        None
    } else {
        Some(ExteriorElement::from_terms(field, dim, ext_terms)?)
    };
    Ok(AlgebraDocument {
        structure,
        form,
        exterior,
    })
}

pub fn serialize(doc: &AlgebraDocument) -> String {
    let mut out = String::new();
    let field = doc.structure.field();
    out.push_str(&format!("field {}\n", field));
    out.push_str(&format!("dim {}\n", doc.structure.dim()));
    out.push_str(&format!("arity {}\n", doc.structure.arity()));
    for (key, value) in doc.structure.entries() {
        let mut tokens: Vec<String> = vec!["mu".into()];
        tokens.extend(key.iter().map(|i| i.to_string()));
        tokens.push(":".into());
        for (i, x) in value.iter().enumerate() {
            if !x.is_zero() {
                tokens.push((i + 1).to_string());
                tokens.push(x.to_string());
            }
        }
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    if let Some(form) = &doc.form {
        for r in 0..form.dim() {
            let mut tokens: Vec<String> = vec!["form".into(), "row".into()];
            tokens.extend((0..form.dim()).map(|c| form.matrix().at(r, c).to_string()));
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
    }
    if let Some(ext) = &doc.exterior {
        for (key, coeff) in ext.terms() {
            let mut tokens: Vec<String> = vec!["ext".into()];
            tokens.extend(key.iter().map(|i| i.to_string()));
            tokens.push(":".into());
            tokens.push(coeff.to_string());
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    const CROSS: &str = "\
# rotation algebra in three dimensions
field Q
dim 3
arity 2
mu 1 2 : 3 1
mu 1 3 : 2 -1
mu 2 3 : 1 1
form identity
";

    #[test]
    fn parses_a_complete_document() {
        let doc = parse(CROSS).unwrap();
        assert_eq!(doc.structure.arity(), 2);
        assert_eq!(doc.structure.dim(), 3);
        let s = |x: i64| Scalar::from_integer(Field::Rational, x);
        assert_eq!(doc.structure.eval_basis(&[1, 2]), vec![s(0), s(0), s(1)]);
        let form = doc.form.unwrap();
        assert!(form.pair(1, 1).is_one());
        assert!(form.pair(1, 2).is_zero());
        assert!(doc.exterior.is_none());
    }

    #[test]
    fn line_numbers_in_errors() {
        let bad = "field Q\ndim 3\narity 2\nmu 2 1 : 3 1\n";
        match parse(bad) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("strictly increasing"), "{}", msg);
            }
            other => panic!("expected a parse error, got {:?}", other),
        }
        let dup = "field Q\ndim 3\narity 2\nmu 1 2 : 3 1\nmu 1 2 : 3 2\n";
        match parse(dup) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected a parse error, got {:?}", other),
        }
    }

    #[test]
    fn header_requirements() {
        assert!(matches!(
            parse("mu 1 2 : 3 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse("field Q\ndim 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse("field Q\nfield Q\ndim 2\narity 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("field F 6\ndim 2\narity 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        // Non-headers before headers, wrong arity, out-of-range index.
        assert!(parse("field Q\ndim 2\narity 2\nmu 1 : 1 1\n").is_err());
        assert!(parse("field Q\ndim 2\narity 2\nmu 1 3 : 1 1\n").is_err());
        assert!(parse("bogus 1\n").is_err());
    }

    #[test]
    fn form_row_documents() {
        let text = "field F 5\ndim 2\narity 2\nmu 1 2 : 1 2\nform row 2 1\nform row 1 2\n";
        let doc = parse(text).unwrap();
        let form = doc.form.unwrap();
        assert_eq!(form.pair(1, 2), form.pair(2, 1));
        // Too few rows.
        assert!(parse("field Q\ndim 2\narity 2\nform row 1 0\n").is_err());
        // Identity and rows conflict.
        assert!(parse("field Q\ndim 2\narity 2\nform identity\nform row 1 0\n").is_err());
        // The form constructor's own rules surface unwrapped.
        assert!(matches!(
            parse("field F 2\ndim 2\narity 2\nform identity\n"),
            Err(Error::CharacteristicTwo)
        ));
        assert!(matches!(
            parse("field Q\ndim 2\narity 2\nform row 1 2\nform row 3 4\n"),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn exterior_terms_and_scalars() {
        let text = "field Q\ndim 3\narity 2\next 1 2 3 : -1\next : 1/2\n";
        let doc = parse(text).unwrap();
        let ext = doc.exterior.unwrap();
        let terms: Vec<_> = ext.terms().collect();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, &Vec::<usize>::new());
        assert_eq!(terms[1].0, &vec![1, 2, 3]);
        // Duplicate exterior keys are rejected.
        assert!(parse("field Q\ndim 3\narity 2\next 1 : 1\next 1 : 2\n").is_err());
    }

    #[test]
    fn fractions_reduce_in_prime_fields() {
        let text = "field F 5\ndim 2\narity 1\nmu 1 : 2 3/4\n";
        let doc = parse(text).unwrap();
        // 3/4 = 3 * 4^{-1} = 3 * 4 = 12 = 2 (mod 5).
        let v = doc.structure.eval_basis(&[1]);
        assert_eq!(v[1], Scalar::from_integer(Field::prime(5).unwrap(), 2));
    }

    #[test]
    fn canonical_round_trip() {
        let doc = parse(CROSS).unwrap();
        let text = serialize(&doc);
        let again = parse(&text).unwrap();
        assert_eq!(doc, again);
        // Serialization is a fixed point.
        assert_eq!(serialize(&again), text);
        // The identity form always reserializes as explicit rows.
        assert!(text.contains("form row 1 0 0"));
    }

    #[test]
    fn zero_structure_documents() {
        let doc = parse("field Q\ndim 3\narity 2\n").unwrap();
        assert!(doc.structure.is_zero());
        let text = serialize(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
    }

    mod round_trip {
        use super::super::*;
        use crate::combinatorics::increasing_tuples;
        use crate::generate::{draw_scalar, gen_random, seeded_rng};
        use proptest::prelude::*;

        fn build_document(
            field: Field,
            dim: usize,
            arity: usize,
            seed: u64,
            with_form: bool,
            with_ext: bool,
        ) -> AlgebraDocument {
            let structure = gen_random(arity, dim, field, seed).unwrap();
            let form = if with_form && field.characteristic() != 2 {
                Some(BilinearForm::identity(field, dim).unwrap())
            } else {
                None
            };
            let exterior = if with_ext {
                let mut rng = seeded_rng(seed.wrapping_add(1));
                let degree = (seed as usize) % (dim + 1);
                let terms: Vec<(Vec<usize>, Scalar)> = increasing_tuples(dim, degree)
                    .into_iter()
                    .map(|key| (key, draw_scalar(&mut rng, field)))
                    .collect();
                let elem = ExteriorElement::from_terms(field, dim, terms).unwrap();
                if elem.is_zero() {
                    None
                } else {
                    Some(elem)
                }
            } else {
                None
            };
            AlgebraDocument {
                structure,
                form,
                exterior,
            }
        }

        proptest! {
            #[test]
            fn serialize_then_parse_is_identity(
                seed in 0u64..400,
                dim in 1usize..5,
                field_choice in 0usize..2,
                with_form: bool,
                with_ext: bool,
            ) {
                let field = if field_choice == 0 {
                    Field::Rational
                } else {
                    Field::prime(5).unwrap()
                };
                let arity = (seed as usize) % (dim + 1);
                let doc = build_document(field, dim, arity, seed, with_form, with_ext);
                let text = serialize(&doc);
                let again = parse(&text).unwrap();
                prop_assert_eq!(&again, &doc);
                prop_assert_eq!(serialize(&again), text);
            }
        }
    }
}
