//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so that each criterion reports a single
//! PASS/FAIL line with its elapsed time; the process fails if any check fails.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use starimage::cones::{classify_cone, orbit_invariant, representative, same_orbit, CanonicalCone};
use starimage::decompose::{skew_to_sym_commutator, sym_traceless_to_commutator, two_symmetric_factors};
use starimage::image::{
    bresar_klep_label, classify_image_symplectic, classify_image_transpose, image_span_generic,
    image_span_symplectic, image_span_transpose, label_from_predicates, predicates,
    reference_subspace, ImageClass, SpanLabel,
};
use starimage::lie4::{
    all_lie_skew_ideals_m4, component_basis, component_sum, generate_lie_skew_ideal, is_lie_skew_ideal,
    o4_collapse, swap_matrix, Component, ComponentSet,
};
use starimage::matrix::{basis_k1_m4, Scalar};
use starimage::{InvolutionCtx, Matrix, SubspaceBasis, Q};

/// Residual bound for commutator decompositions, relative to `‖A‖∞`.
const RESIDUAL_TOL: f64 = 1e-8;
/// Bound on `‖B − Bᵗ‖∞` and `‖C + Cᵗ‖∞`.
const DEFECT_TOL: f64 = 1e-9;
/// Relative tolerance for real-backend cone parameters and the M3 identity.
const REAL_TOL: f64 = 1e-9;
const SEED: u64 = 20_240_531;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn criterion_1() -> Check {
    let expected = [
        ImageClass::Zero,
        ImageClass::SkewLine,
        ImageClass::ScalarLine,
        ImageClass::TracelessSym2,
        ImageClass::ScalarPlusSkew,
        ImageClass::Sl2,
        ImageClass::Sym,
        ImageClass::ContainsBasis,
    ];
    for (p, want) in corpus().iter().zip(expected) {
        let got = classify_image_transpose(p).map_err(|e| format!("{p}: {e}"))?;
        ensure(got == want, || format!("{p}: expected {want}, got {got}"))?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    let ctx = InvolutionCtx::symplectic(2).unwrap();
    let cases = [
        ("y1", ImageClass::ScalarLine),
        ("z1", ImageClass::Sl2),
        ("z1z2", ImageClass::Full),
        ("[z1,z2]", ImageClass::Sl2),
        // multilinearization of [z1,z2]²
        ("[z1,z2][z3,z4] + [z3,z4][z1,z2]", ImageClass::ScalarLine),
    ];
    for (k, (text, want)) in cases.iter().enumerate() {
        let p = poly(text);
        let got = classify_image_symplectic(&p).map_err(|e| format!("{text}: {e}"))?;
        ensure(got == *want, || format!("{text}: expected {want}, got {got}"))?;
        if k >= 3 {
            // brute-force oracle over the echelon bases of the symmetric and skew elements
            let oracle = image_span_generic(&p, &ctx);
            ensure(oracle == image_span_symplectic(&p), || {
                format!("{text}: fast span differs from the brute-force span")
            })?;
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let ctx = InvolutionCtx::transpose(2);
    let expected = [
        SpanLabel::Zero,
        SpanLabel::K,
        SpanLabel::Z,
        SpanLabel::SK,
        SpanLabel::ZplusK,
        SpanLabel::Comm,
        SpanLabel::S,
        SpanLabel::A,
    ];
    for (p, want) in corpus().iter().zip(expected) {
        let got = bresar_klep_label(p, &ctx).map_err(|e| format!("{p}: {e}"))?;
        ensure(got == want, || format!("{p}: expected label {want}, got {got}"))?;
        let pr = predicates(p, &ctx);
        let implied = label_from_predicates(&pr);
        ensure(
            reference_subspace(implied, &ctx) == reference_subspace(got, &ctx),
            || format!("{p}: predicates imply {implied}, span gives {got}"),
        )?;
        let row_holds = match got {
            SpanLabel::Zero => pr.is_identity,
            SpanLabel::Z => pr.is_central && !pr.is_identity,
            SpanLabel::K => pr.skew_part_identity && !pr.is_identity,
            SpanLabel::ZplusK => pr.sym_part_central && !pr.is_central,
            SpanLabel::SK => pr.sym_part_identity && pr.trace_vanishes && !pr.is_identity,
            SpanLabel::S => pr.sym_part_identity && !pr.trace_vanishes && !pr.is_central,
            SpanLabel::Comm => pr.trace_vanishes && !pr.sym_part_identity && !pr.skew_part_identity,
            SpanLabel::A => !pr.trace_vanishes && !pr.sym_part_identity && !pr.sym_part_central,
        };
        ensure(row_holds, || format!("{p}: predicate row for {got} fails: {pr:?}"))?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    for k in 0..500 {
        let n = rng.gen_range(2..=6);
        let a = random_symmetric_traceless(&mut rng, n);
        let pair = sym_traceless_to_commutator(&a).map_err(|e| format!("comm #{k}: {e}"))?;
        let residual = pair.residual(&a);
        ensure(residual <= RESIDUAL_TOL * a.norm_inf(), || {
            format!("comm #{k} (n={n}): residual {residual:e}")
        })?;
        let defect = (&pair.b - &pair.b.transpose())
            .norm_inf()
            .max((&pair.c + &pair.c.transpose()).norm_inf());
        ensure(defect <= DEFECT_TOL, || format!("comm #{k}: defect {defect:e}"))?;
    }
    for k in 0..500 {
        let n = rng.gen_range(2..=8);
        let a = random_skew(&mut rng, n);
        let pair = skew_to_sym_commutator(&a).map_err(|e| format!("skewcomm #{k}: {e}"))?;
        let residual = pair.residual(&a);
        ensure(residual <= RESIDUAL_TOL * a.norm_inf(), || {
            format!("skewcomm #{k} (n={n}): residual {residual:e}")
        })?;
        let defect = (&pair.b - &pair.b.transpose())
            .norm_inf()
            .max((&pair.c - &pair.c.transpose()).norm_inf());
        ensure(defect <= DEFECT_TOL, || format!("skewcomm #{k}: defect {defect:e}"))?;
    }
    for k in 0..500 {
        let n = rng.gen_range(2..=5);
        let a = random_integer(&mut rng, n, 9);
        let (s1, s2) = two_symmetric_factors(&a, SEED + k).map_err(|e| format!("twosym #{k}: {e}"))?;
        ensure(&s1 * &s2 == a && s1.is_symmetric() && s2.is_symmetric(), || {
            format!("twosym #{k}: factors are not exact")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    for k in 0..100 {
        let p = random_mixed_poly(&mut rng, 5);
        let g = p.substitute_commutators();
        ensure(g.skew_arity() == 0, || format!("#{k}: {g} still has skew variables"))?;
        let direct = image_span_transpose(&p);
        let reduced = image_span_transpose(&g);
        ensure(direct == reduced, || {
            format!(
                "#{k}: {p} spans dimension {} but its reduction spans {}",
                direct.dim(),
                reduced.dim()
            )
        })?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for k in 0..200 {
        let a = random_real(&mut rng, 2);
        let c = classify_cone(&a).unwrap();
        for lambda in [-3.0, -1.0, 0.5, 7.0] {
            let scaled = classify_cone(&a.scale(&lambda)).unwrap();
            ensure(scaled.approx_eq(&c), || format!("scaling #{k} by {lambda}: {c} vs {scaled}"))?;
        }
        let q = random_orthogonal_2(&mut rng);
        let conj = classify_cone(&(&(&q.transpose() * &a) * &q)).unwrap();
        ensure(conj.approx_eq(&c), || format!("conjugation #{k}: {c} vs {conj}"))?;
    }

    for i in 0..10 {
        for j in 0..10 {
            let a_sq = 0.75 * i as f64;
            let s_sq = 0.4 * j as f64;
            let mut cones = Vec::new();
            if i > 0 || j > 0 {
                cones.push(CanonicalCone::general(a_sq, s_sq).unwrap());
            }
            if i > 0 && j == 0 {
                cones.push(CanonicalCone::diagonal(a_sq).unwrap());
            }
            for c in cones {
                let back = classify_cone(&representative(&c).unwrap()).unwrap();
                ensure(back.approx_eq(&c), || format!("grid ({a_sq}, {s_sq}): {c} came back as {back}"))?;
                let rel = |x: &Option<f64>, y: &Option<f64>| match (x, y) {
                    (Some(x), Some(y)) => (x - y).abs() <= REAL_TOL * x.abs().max(1.0),
                    (None, None) => true,
                    _ => false,
                };
                ensure(rel(&back.a_sq, &c.a_sq) && rel(&back.s_sq, &c.s_sq), || {
                    format!("grid ({a_sq}, {s_sq}): parameters drifted")
                })?;
            }
        }
    }

    // oracle: trace, (a12 − a21)² and the Frobenius norm determine the orbit
    let oracle = |a: &Matrix<Q>, b: &Matrix<Q>| {
        let skew_sq = |m: &Matrix<Q>| {
            let d = m[(0, 1)].clone() - m[(1, 0)].clone();
            d.clone() * d
        };
        let frob = |m: &Matrix<Q>| m.entries().iter().fold(Q::from_i64(0), |acc, x| acc + x * x);
        a.trace() == b.trace() && skew_sq(a) == skew_sq(b) && frob(a) == frob(b)
    };
    let mut agreed_true = 0;
    for k in 0..500 {
        let a = random_integer(&mut rng, 2, 3);
        let b = if k % 2 == 0 {
            let q = rational_orthogonal_2(&mut rng);
            &(&q.transpose() * &a) * &q
        } else {
            random_integer(&mut rng, 2, 3)
        };
        let got = same_orbit(&a, &b).unwrap();
        ensure(got == oracle(&a, &b), || format!("pair #{k}: same_orbit = {got} disagrees with invariants"))?;
        let (x, y) = (orbit_invariant(&a).unwrap(), orbit_invariant(&b).unwrap());
        ensure(got == (x == y), || format!("pair #{k}: invariant record disagrees"))?;
        agreed_true += got as usize;
    }
    ensure(agreed_true >= 250, || format!("only {agreed_true} conjugate pairs recognised"))
}

fn set(items: &[Component]) -> ComponentSet {
    items.iter().copied().collect()
}

fn criterion_7() -> Check {
    let dims: Vec<usize> = Component::M4
        .iter()
        .map(|&c| component_basis(4, c).unwrap().dim())
        .collect();
    ensure(dims == [1, 3, 3, 9], || format!("component dimensions {dims:?}"))?;
    let all = component_sum(4, &Component::M4.into_iter().collect()).unwrap();
    ensure(all.dim() == 16, || format!("components span rank {}", all.dim()))?;

    let ideals = all_lie_skew_ideals_m4();
    ensure(ideals.len() == 16, || format!("{} ideals", ideals.len()))?;
    for (components, span) in &ideals {
        ensure(is_lie_skew_ideal(span), || format!("{components:?} is not closed"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let k1 = component_basis(4, Component::K1).unwrap();
    let gens = basis_k1_m4::<Q>();
    for k in 0..20 {
        let mut coeffs = [0i64; 3];
        while coeffs == [0, 0, 0] {
            coeffs = [0; 3].map(|_| rng.gen_range(-5..=5));
        }
        let x = gens
            .iter()
            .zip(coeffs)
            .fold(Matrix::<Q>::zeros(4), |acc, (g, c)| &acc + &g.scale(&Q::from_i64(c)));
        let ideal = generate_lie_skew_ideal(&[x], 4).unwrap();
        ensure(ideal == k1, || format!("element #{k} {coeffs:?} generates dimension {}", ideal.dim()))?;
    }

    let p = swap_matrix();
    ensure(&p * &p.transpose() == Matrix::identity(4), || "P is not orthogonal".into())?;
    let conjugated: Vec<Matrix<Q>> = gens.iter().map(|g| g.conjugate(&p).unwrap()).collect();
    ensure(
        SubspaceBasis::span(4, &conjugated) == component_basis(4, Component::K2).unwrap(),
        || "P⁻¹K1P differs from K2".into(),
    )?;
    let collapse = o4_collapse(&set(&[Component::K1])).unwrap();
    ensure(
        !collapse.invariant && collapse.collapsed == set(&[Component::K1, Component::K2]),
        || format!("collapse of {{K1}} gave {collapse:?}"),
    )
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for k in 0..200 {
        let u = random_skew(&mut rng, 3);
        let v = random_skew(&mut rng, 3);
        let m = &u * &v;
        let lhs = m[(0, 1)] * m[(1, 2)] * m[(2, 0)];
        let rhs = m[(1, 0)] * m[(2, 1)] * m[(0, 2)];
        let scale = m.norm_inf().powi(3).max(1.0);
        ensure((lhs - rhs).abs() <= REAL_TOL * scale, || {
            format!("pair #{k}: {lhs} vs {rhs}")
        })?;
    }
    let span = image_span_generic(&poly("z1z2"), &InvolutionCtx::transpose(3));
    ensure(span.dim() == 9, || format!("span of z1z2 on M3 has dimension {}", span.dim()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("example corpus classification", criterion_1, Duration::from_secs(1)),
        ("symplectic classification", criterion_2, Duration::from_secs(1)),
        ("span labels and predicates", criterion_3, Duration::from_secs(1)),
        ("decomposition residuals", criterion_4, Duration::from_secs(30)),
        ("reduction equivalence", criterion_5, Duration::from_secs(10)),
        ("cone suite", criterion_6, Duration::from_secs(5)),
        ("Lie skew-ideal lattice of M4", criterion_7, Duration::from_secs(5)),
        ("M3 skew products", criterion_8, Duration::from_secs(5)),
    ];
    let mut failures = 0;
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= *budget, || {
                format!("took {elapsed:.2?}, budget {budget:?}")
            })
        });
        match result {
            Ok(()) => println!("PASS criterion {}: {name} ({elapsed:.2?})", k + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {}: {name} ({elapsed:.2?}): {msg}", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
