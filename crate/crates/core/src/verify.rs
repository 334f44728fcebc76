//! Self-verification suite: a fixed battery of checks exercising every
//! component against frozen expectations and cross-route equivalences. The
//! CLI `verify-all` subcommand and the acceptance test target both drive
//! `run_all`, so there is a single source of truth for what "the kernel
//! works" means.
//!
//! Each battery is deterministic: all randomness flows through the seeded
//! generator with battery-specific base seeds.

use rand_chacha::rand_core::RngCore;
use rand_chacha::ChaCha20Rng;

use crate::alt_form::{
    check_filippov, check_jacobi_explicit, check_type, AltForm,
};
use crate::analysis::{
    commutator_defect, exhaustive_type_search, is_ideal, is_simple, Status,
};
use crate::combinatorics::increasing_tuples;
use crate::error::Result;
use crate::exterior::{
    check_invariance, check_type_poisson, exterior_from_structure, poisson_bracket,
    structure_from_exterior, BilinearForm, Degree, ExteriorElement,
};
use crate::generate::{
    draw_scalar, gen_random, gen_top_form_identity, seeded_rng,
};
use crate::guard::Guards;
use crate::linalg::Matrix;
use crate::scalar::{vec_add_scaled, vec_is_zero, vec_neg, Field, Scalar};

/// Result of one verification battery.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub label: &'static str,
    pub passed: bool,
    pub details: String,
}

/// Runs every battery in order. Never panics on mathematical failure; a
/// failed expectation or an unexpected error turns into `passed: false`
/// with the reason in `details`.
type Battery = fn() -> Result<String>;

pub fn run_all() -> Vec<CriterionOutcome> {
    let batteries: Vec<(usize, &'static str, Battery)> = vec![
        (1, "top-form structures satisfy the derivation identity and are simple", criterion_1),
        (2, "explicit truncated identity agrees with the bracket type condition", criterion_2),
        (3, "iterated contraction of a superbracket recovers the operator bracket", criterion_3),
        (4, "type condition agrees between the operator and exterior routes", criterion_4),
        (5, "exhaustive searches find only non-simple structures", criterion_5),
        (6, "binary search survivors have vanishing triple products", criterion_6),
        (7, "superbracket satisfies antisymmetry, Leibniz, and Jacobi", criterion_7),
        (8, "bracket calculus is graded-antisymmetric and multilinear", criterion_8),
        (9, "structure and exterior encodings invert each other", criterion_9),
        (10, "survivor landscape: no simple structures, commutator defects recorded", criterion_10),
    ];
    batteries
        .into_iter()
        .map(|(id, label, body)| match body() {
            Ok(details) => CriterionOutcome {
                id,
                label,
                passed: true,
                details,
            },
            Err(e) => CriterionOutcome {
                id,
                label,
                passed: false,
                details: e.to_string(),
            },
        })
        .collect()
}

fn fail(msg: String) -> crate::error::Error {
    crate::error::Error::Internal(msg)
}

/// Symmetric nondegenerate form with entries drawn from the seeded stream;
/// resamples on degeneracy and falls back to the identity if the stream is
/// persistently unlucky.
fn random_symmetric_form(rng: &mut ChaCha20Rng, field: Field, dim: usize) -> Result<BilinearForm> {
    for _ in 0..200 {
        let mut m = Matrix::zero(field, dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let x = draw_scalar(rng, field);
                *m.at_mut(i, j) = x.clone();
                *m.at_mut(j, i) = x;
            }
        }
        if let Ok(form) = BilinearForm::new(m) {
            return Ok(form);
        }
    }
    BilinearForm::identity(field, dim)
}

fn random_homogeneous(
    rng: &mut ChaCha20Rng,
    field: Field,
    dim: usize,
    degree: usize,
) -> Result<ExteriorElement> {
    let terms: Vec<(Vec<usize>, Scalar)> = increasing_tuples(dim, degree)
        .into_iter()
        .map(|key| (key, draw_scalar(rng, field)))
        .collect();
    ExteriorElement::from_terms(field, dim, terms)
}

fn criterion_1() -> Result<String> {
    let mut covered = 0;
    for n in 2..=5 {
        let mu = gen_top_form_identity(n, Field::Rational)?;
        if let Some(v) = check_filippov(&mu)? {
            return Err(fail(format!("arity-{} top form breaks the derivation identity: {}", n, v)));
        }
        if let Some(v) = check_type(&mu, n - 1, 0, false)? {
            return Err(fail(format!("arity-{} top form is not type ({}, 0): {}", n, n - 1, v)));
        }
        covered += 1;
    }
    let f5 = Field::prime(5)?;
    for n in [2usize, 3] {
        let mu = gen_top_form_identity(n, f5)?;
        let verdict = is_simple(&mu, &Guards::default(), 0)?;
        if verdict.status != Status::SimpleCertified {
            return Err(fail(format!(
                "arity-{} top form over F5 should be certified simple, got: {}",
                n, verdict
            )));
        }
        covered += 1;
    }
    Ok(format!(
        "{} top-form structures checked (arities 2..=5 over Q, simplicity over F5)",
        covered
    ))
}

fn criterion_2() -> Result<String> {
    let f5 = Field::prime(5)?;
    let mut agreements = 0;
    let mut satisfied = 0;
    let mut check_all_l = |mu: &AltForm, tag: &str| -> Result<()> {
        let n = mu.arity();
        for l in 0..n {
            let explicit = check_jacobi_explicit(mu, l)?.is_none();
            let via_type = check_type(mu, n - 1, l, false)?.is_none();
            if explicit != via_type {
                return Err(fail(format!(
                    "{}: explicit identity and type ({}, {}) disagree ({} vs {})",
                    tag,
                    n - 1,
                    l,
                    explicit,
                    via_type
                )));
            }
            agreements += 1;
            if explicit {
                satisfied += 1;
            }
        }
        Ok(())
    };
    for seed in 1..=200u64 {
        let mu = gen_random(3, 3, f5, seed)?;
        check_all_l(&mu, &format!("random ternary structure, seed {}", seed))?;
    }
    let heis = AltForm::from_table(
        Field::Rational,
        3,
        2,
        vec![(
            vec![1, 2],
            vec![
                Scalar::zero(Field::Rational),
                Scalar::zero(Field::Rational),
                Scalar::one(Field::Rational),
            ],
        )],
    )?;
    check_all_l(&heis, "nilpotent two-step structure")?;
    for n in 2..=5 {
        let mu = gen_top_form_identity(n, Field::Rational)?;
        check_all_l(&mu, &format!("arity-{} top form", n))?;
    }
    Ok(format!(
        "{} route agreements checked, {} identities satisfied on both routes",
        agreements, satisfied
    ))
}

fn criterion_3() -> Result<String> {
    let mut rng = seeded_rng(0x5ec7_0300);
    let mut checked = 0;
    for case in 0..50u32 {
        let dim = 3 + (rng.next_u32() % 3) as usize; // 3..=5
        let max_deg = dim.min(4);
        let dl = 3 + (rng.next_u32() as usize % (max_deg - 2)); // 3..=max_deg
        let dk = 3 + (rng.next_u32() as usize % (max_deg - 2));
        let form = random_symmetric_form(&mut rng, Field::Rational, dim)?;
        let l_tilde = random_homogeneous(&mut rng, Field::Rational, dim, dl)?;
        let k_tilde = random_homogeneous(&mut rng, Field::Rational, dim, dk)?;
        if let Some(v) = crate::exterior::check_bracket_compat(&l_tilde, &k_tilde, &form)? {
            return Err(fail(format!(
                "case {}: dim {}, degrees ({}, {}): compatibility fails {}",
                case, dim, dl, dk, v
            )));
        }
        checked += 1;
    }
    Ok(format!(
        "{} random pairs of homogeneous elements checked against the operator bracket",
        checked
    ))
}

fn criterion_4() -> Result<String> {
    let mut rng = seeded_rng(0x5ec7_0400);
    let mut checked = 0;
    for case in 0..50u32 {
        let n = 2 + (rng.next_u32() % 2) as usize; // 2 or 3
        let dim = 3 + (rng.next_u32() % 2) as usize; // 3 or 4
        if n + 1 > dim {
            continue;
        }
        let form = random_symmetric_form(&mut rng, Field::Rational, dim)?;
        let mu_tilde = random_homogeneous(&mut rng, Field::Rational, dim, n + 1)?;
        let mu = structure_from_exterior(&mu_tilde, &form, n)?;
        for r in 0..n {
            for l in 0..=r {
                let via_exterior = check_type_poisson(&mu_tilde, &form, n, r, l)?.is_none();
                let via_operator = check_type(&mu, r, l, false)?.is_none();
                if via_exterior != via_operator {
                    return Err(fail(format!(
                        "case {}: dim {}, arity {}, (r, l) = ({}, {}): exterior route {} vs operator route {}",
                        case, dim, n, r, l, via_exterior, via_operator
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{} (structure, r, l) combinations agree between both routes",
        checked
    ))
}

/// The five search instances shared by criteria 5, 6, and 10:
/// (p, dim, arity, r, l).
const SEARCH_INSTANCES: [(u64, usize, usize, usize, usize); 5] = [
    (2, 2, 2, 1, 1),
    (3, 2, 2, 1, 1),
    (2, 3, 2, 1, 1),
    (2, 3, 3, 2, 1),
    (2, 3, 3, 2, 2),
];

fn criterion_5() -> Result<String> {
    let mut survivor_count = 0;
    let mut total: u128 = 0;
    for &(p, dim, arity, r, l) in &SEARCH_INSTANCES {
        let field = Field::prime(p)?;
        let report = exhaustive_type_search(field, dim, arity, r, l, &Guards::default())?;
        total += report.total_candidates;
        for (mu, verdict) in &report.survivors {
            survivor_count += 1;
            match &verdict.status {
                Status::NotSimple { witness: Some(w) } => {
                    if !is_ideal(mu, w)? {
                        return Err(fail(format!(
                            "search p={} dim={} arity={} ({},{}): witness {} is not an ideal",
                            p, dim, arity, r, l, w.describe()
                        )));
                    }
                    if w.dim() == 0 || w.dim() >= mu.dim() {
                        return Err(fail(format!(
                            "search p={} dim={} arity={} ({},{}): witness {} is not proper nonzero",
                            p, dim, arity, r, l, w.describe()
                        )));
                    }
                }
                Status::NotSimple { witness: None } => {
                    return Err(fail(format!(
                        "search p={} dim={} arity={} ({},{}): dimension-based verdict in dimension {}",
                        p, dim, arity, r, l, mu.dim()
                    )));
                }
                other => {
                    return Err(fail(format!(
                        "search p={} dim={} arity={} ({},{}): unexpected verdict {:?}",
                        p, dim, arity, r, l, other
                    )));
                }
            }
        }
    }
    Ok(format!(
        "{} candidates searched across 5 instances; all {} survivors non-simple with verified ideals",
        total, survivor_count
    ))
}

fn criterion_6() -> Result<String> {
    let mut survivors = 0;
    let mut triples = 0;
    for &(p, dim, arity, r, l) in &SEARCH_INSTANCES {
        if arity != 2 {
            continue;
        }
        let field = Field::prime(p)?;
        let report = exhaustive_type_search(field, dim, arity, r, l, &Guards::default())?;
        let units = crate::alt_form::basis_vectors(field, dim);
        for (mu, _) in &report.survivors {
            survivors += 1;
            for i in 1..=dim {
                for j in i + 1..=dim {
                    let inner = mu.eval_basis(&[i, j]);
                    for k in 1..=dim {
                        let outer = mu.eval_unchecked(&[&inner, units[k - 1].as_slice()]);
                        triples += 1;
                        if !vec_is_zero(&outer) {
                            return Err(fail(format!(
                                "p={} dim={}: survivor has nonzero triple product at ({}, {}, {})",
                                p, dim, i, j, k
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{} binary survivors checked, {} triple products all zero",
        survivors, triples
    ))
}

fn criterion_7() -> Result<String> {
    let mut checked = 0;
    for (half, field) in [(0u64, Field::Rational), (1u64, Field::prime(5)?)] {
        let mut rng = seeded_rng(0x5ec7_0700 + half);
        for case in 0..50u32 {
            let dim = 2 + (rng.next_u32() % 4) as usize; // 2..=5
            let form = random_symmetric_form(&mut rng, field, dim)?;
            let pure = |rng: &mut ChaCha20Rng| -> Result<ExteriorElement> {
                let d = 1 + (rng.next_u32() as usize % dim.min(3));
                random_homogeneous(rng, field, dim, d)
            };
            let x = pure(&mut rng)?;
            let y = pure(&mut rng)?;
            let z = pure(&mut rng)?;
            let (p, q) = match (x.degree(), y.degree()) {
                (Degree::Pure(p), Degree::Pure(q)) => (p, q),
                // A fully zero draw carries no degree; skip the triple.
                _ => continue,
            };
            let sign_flip = (p * q) % 2 == 0;

            let xy = poisson_bracket(&x, &y, &form)?;
            let yx = poisson_bracket(&y, &x, &form)?;
            let expected = if sign_flip { yx.neg() } else { yx };
            if xy != expected {
                return Err(fail(format!(
                    "case {} ({}): graded antisymmetry fails for degrees ({}, {})",
                    case, field, p, q
                )));
            }

            let lhs = poisson_bracket(&x, &y.wedge(&z)?, &form)?;
            let first = poisson_bracket(&x, &y, &form)?.wedge(&z)?;
            let mut second = y.wedge(&poisson_bracket(&x, &z, &form)?)?;
            if (p * q) % 2 == 1 {
                second = second.neg();
            }
            if lhs != first.add(&second)? {
                return Err(fail(format!(
                    "case {} ({}): Leibniz fails for degrees ({}, {})",
                    case, field, p, q
                )));
            }

            let jac_lhs = poisson_bracket(&x, &poisson_bracket(&y, &z, &form)?, &form)?;
            let jac_first = poisson_bracket(&poisson_bracket(&x, &y, &form)?, &z, &form)?;
            let mut jac_second = poisson_bracket(&y, &poisson_bracket(&x, &z, &form)?, &form)?;
            if (p * q) % 2 == 1 {
                jac_second = jac_second.neg();
            }
            if jac_lhs != jac_first.add(&jac_second)? {
                return Err(fail(format!(
                    "case {} ({}): Jacobi fails for degrees ({}, {})",
                    case, field, p, q
                )));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{} random triples checked for antisymmetry, Leibniz, and Jacobi over Q and F5",
        checked
    ))
}

fn criterion_8() -> Result<String> {
    let mut checked = 0;
    for (half, field) in [(0u64, Field::Rational), (1u64, Field::prime(5)?)] {
        let mut rng = seeded_rng(0x5ec7_0800 + half);
        for case in 0..50u32 {
            let dim = 2 + (rng.next_u32() % 3) as usize; // 2..=4
            let l_arity = 1 + (rng.next_u32() as usize % dim.min(3)); // 1..=min(dim,3)
            let k_arity = 1 + (rng.next_u32() as usize % dim.min(3));
            let l_form = gen_random(l_arity, dim, field, rng.next_u32() as u64)?;
            let k_form = gen_random(k_arity, dim, field, rng.next_u32() as u64)?;

            // Graded antisymmetry of the bracket.
            let lk = l_form.nr_bracket(&k_form)?;
            let kl = k_form.nr_bracket(&l_form)?;
            let expected = if ((l_arity - 1) * (k_arity - 1)).is_multiple_of(2) {
                kl.neg()
            } else {
                kl
            };
            if lk != expected {
                return Err(fail(format!(
                    "case {} ({}): bracket antisymmetry fails for arities ({}, {})",
                    case, field, l_arity, k_arity
                )));
            }

            // The insertion output is itself alternating: check a swap of
            // its first two arguments on random vectors.
            let ins_arity = l_arity + k_arity - 1;
            if ins_arity >= 2 {
                let ins = l_form.insertion(&k_form)?;
                let args: Vec<Vec<Scalar>> = (0..ins_arity)
                    .map(|_| (0..dim).map(|_| draw_scalar(&mut rng, field)).collect())
                    .collect();
                let direct = ins.eval(&args)?;
                let mut swapped = args.clone();
                swapped.swap(0, 1);
                if ins.eval(&swapped)? != vec_neg(&direct) {
                    return Err(fail(format!(
                        "case {} ({}): insertion output does not alternate under a swap",
                        case, field
                    )));
                }
            }

            // Multilinearity in the first slot.
            let mut args: Vec<Vec<Scalar>> = (0..l_arity)
                .map(|_| (0..dim).map(|_| draw_scalar(&mut rng, field)).collect())
                .collect();
            let a: Vec<Scalar> = (0..dim).map(|_| draw_scalar(&mut rng, field)).collect();
            let b: Vec<Scalar> = (0..dim).map(|_| draw_scalar(&mut rng, field)).collect();
            let c = draw_scalar(&mut rng, field);
            let mut combined = a.clone();
            vec_add_scaled(&mut combined, &c, &b);
            args[0] = combined;
            let lhs = l_form.eval(&args)?;
            args[0] = a;
            let va = l_form.eval(&args)?;
            args[0] = b;
            let vb = l_form.eval(&args)?;
            let mut rhs = va;
            vec_add_scaled(&mut rhs, &c, &vb);
            if lhs != rhs {
                return Err(fail(format!(
                    "case {} ({}): evaluation is not linear in the first slot",
                    case, field
                )));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{} random form pairs checked for bracket antisymmetry, insertion alternation, linearity",
        checked
    ))
}

fn criterion_9() -> Result<String> {
    let mut rng = seeded_rng(0x5ec7_0900);
    let mut round_trips = 0;
    for case in 0..50u32 {
        let n = 2 + (rng.next_u32() % 2) as usize; // 2 or 3
        // Keep dim large enough for a nonzero degree-(n+1) element.
        let lo = (n + 1).max(3);
        let dim = lo + (rng.next_u32() as usize % (6 - lo)); // lo..=5
        let form = random_symmetric_form(&mut rng, Field::Rational, dim)?;
        let mu_tilde = random_homogeneous(&mut rng, Field::Rational, dim, n + 1)?;
        let mu = structure_from_exterior(&mu_tilde, &form, n)?;
        if let Some(v) = check_invariance(&mu, &form)? {
            return Err(fail(format!(
                "case {}: contracted structure is not invariant: {}",
                case, v
            )));
        }
        let back = exterior_from_structure(&mu, &form)?;
        if back != mu_tilde {
            return Err(fail(format!(
                "case {}: dim {}, arity {}: encoding round trip drifted ({} vs {})",
                case, dim, n, back, mu_tilde
            )));
        }
        round_trips += 1;
    }
    Ok(format!(
        "{} random structures round-tripped through the exterior encoding",
        round_trips
    ))
}

fn criterion_10() -> Result<String> {
    let mut recorded = 0;
    let mut nonzero_commuting = 0;
    let mut max_rank_seen = 0;
    for &(p, dim, arity, r, l) in &SEARCH_INSTANCES {
        let field = Field::prime(p)?;
        let report = exhaustive_type_search(field, dim, arity, r, l, &Guards::default())?;
        for (mu, verdict) in &report.survivors {
            if verdict.status == Status::SimpleCertified {
                return Err(fail(format!(
                    "search p={} dim={} arity={} ({},{}) produced a certified-simple survivor",
                    p, dim, arity, r, l
                )));
            }
            let d = commutator_defect(mu)?;
            recorded += 1;
            max_rank_seen = max_rank_seen.max(d.max_rank);
            if !mu.is_zero() && d.all_zero {
                nonzero_commuting += 1;
            }
        }
    }
    // The two-step nilpotent reference point: commuting operators.
    let heis = AltForm::from_table(
        Field::Rational,
        3,
        2,
        vec![(
            vec![1, 2],
            vec![
                Scalar::zero(Field::Rational),
                Scalar::zero(Field::Rational),
                Scalar::one(Field::Rational),
            ],
        )],
    )?;
    let d = commutator_defect(&heis)?;
    if !d.all_zero {
        return Err(fail(
            "two-step nilpotent reference structure has non-commuting operators".into(),
        ));
    }
    Ok(format!(
        "no simple survivors; {} defects recorded ({} nonzero survivors with commuting operators, max rank {}); nilpotent reference commutes",
        recorded, nonzero_commuting, max_rank_seen
    ))
}
