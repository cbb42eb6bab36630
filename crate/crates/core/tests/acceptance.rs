//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`). Criteria
//! with stated runtime budgets assert them.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use schur_core::cxlinalg::{self, ab_star, vec_inner, CMatrix};
use schur_core::genmatfn::{self, gmf};
use schur_core::permgroup::{PermGroup, Permutation};
use schur_core::random;
use schur_core::repcat::{BuiltinRep, UnitaryRep};
use schur_core::tensorlab::{
    self, apply_symmetrizer, collinearity, equality_chain_report, inner, symmetrize,
};
use schur_core::Tolerances;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pass(id: u32, label: &str) {
    println!("ACCEPTANCE PASS [{id:2}] {label}");
}

/// The worked 3x3 example: det 2, off-diagonal support only at (2,3).
fn worked_h() -> CMatrix {
    CMatrix::from_rows(vec![
        vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(3.0, 0.0), c(0.0, 1.0)],
        vec![c(0.0, 0.0), c(0.0, -1.0), c(1.0, 0.0)],
    ])
    .unwrap()
}

fn subgroups_of_s3() -> Vec<PermGroup> {
    let gens: [&[&str]; 6] = [
        &[],
        &["(1 2)"],
        &["(1 3)"],
        &["(2 3)"],
        &["(1 2 3)"],
        &["(1 2)", "(2 3)"],
    ];
    gens.iter()
        .map(|set| {
            let parsed: Vec<Permutation> = set
                .iter()
                .map(|s| Permutation::from_cycles(3, s).unwrap())
                .collect();
            PermGroup::closure_default(3, &parsed).unwrap()
        })
        .collect()
}

/// Catalog representations valid for a group of the given degree.
fn catalog_for(group: &PermGroup) -> Vec<UnitaryRep> {
    let mut reps = vec![
        UnitaryRep::builtin(BuiltinRep::Trivial, group).unwrap(),
        UnitaryRep::builtin(BuiltinRep::Sign, group).unwrap(),
        UnitaryRep::builtin(BuiltinRep::SignPlusTrivial, group).unwrap(),
        UnitaryRep::builtin(BuiltinRep::NaturalPermutation, group).unwrap(),
    ];
    if group.degree() == 3 {
        reps.push(UnitaryRep::builtin(BuiltinRep::S3Standard2d, group).unwrap());
    }
    reps
}

#[test]
fn criterion_01_worked_example_end_to_end() {
    let started = Instant::now();
    let tols = Tolerances::default();
    let h = worked_h();
    let g = PermGroup::symmetric(3).unwrap();
    let rep = UnitaryRep::builtin(BuiltinRep::S3Standard2d, &g).unwrap();

    let m_h = gmf(&h, &g, &rep, &tols).unwrap();
    let s = 3.0f64.sqrt() / 2.0;
    let expected = CMatrix::from_real(&[&[2.5, s], &[s, 3.5]]);
    assert!(m_h.max_abs_diff(&expected) <= 1e-9, "M_H entries");

    let (vals, vecs) = cxlinalg::herm_eig(&m_h).unwrap();
    assert!((vals[0] - 2.0).abs() <= 1e-9 && (vals[1] - 4.0).abs() <= 1e-9);

    let det_h = cxlinalg::det(&h).unwrap();
    assert!((det_h - c(2.0, 0.0)).norm() <= 1e-9);

    // u_min = ±(-sqrt(3)/2, 1/2) up to a global phase
    let u_min: Vec<Complex64> = (0..2).map(|i| vecs[(i, 0)]).collect();
    let reference = [c(-s, 0.0), c(0.5, 0.0)];
    assert!((vec_inner(&u_min, &reference).norm() - 1.0).abs() <= 1e-9);

    let t23 = Permutation::transposition(3, 2, 3).unwrap();
    let form = vec_inner(&rep.evaluate(&t23).unwrap().mul_vec(&u_min), &u_min);
    assert!((form - c(-1.0, 0.0)).norm() <= 1e-9);

    let report = genmatfn::schur_check(&h, &g, &rep, &u_min, &tols).unwrap();
    assert!(report.equality && report.diagnosis.holds());
    assert!((report.value - 2.0).abs() <= 1e-9);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 0.1, "took {elapsed:?}");
    pass(1, "worked example reproduced end-to-end");
}

#[test]
fn criterion_02_trace_form() {
    let tols = Tolerances::default();
    let g = PermGroup::symmetric(3).unwrap();

    let rep2d = UnitaryRep::builtin(BuiltinRep::S3Standard2d, &g).unwrap();
    let report = genmatfn::trace_report(&worked_h(), &g, &rep2d, &tols).unwrap();
    assert!((report.m_det - 4.0).abs() <= 1e-9);
    assert!((report.trace - 6.0).abs() <= 1e-9);
    assert!(!report.equality);

    let rep = UnitaryRep::builtin(BuiltinRep::SignPlusTrivial, &g).unwrap();
    let mut rng = random::rng(101);
    for _ in 0..100 {
        let h = random::pd_hermitian(&mut rng, 3);
        let m_h = gmf(&h, &g, &rep, &tols).unwrap();
        let det = cxlinalg::det(&h).unwrap();
        let per = cxlinalg::permanent(&h).unwrap();
        let expected = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => det,
            (1, 1) => per,
            _ => c(0.0, 0.0),
        });
        assert!(m_h.max_abs_diff(&expected) <= 1e-9 * m_h.max_abs().max(1.0));
    }
    pass(2, "trace form and det/per block structure");
}

#[test]
fn criterion_03_marcus_oracle_identity() {
    let started = Instant::now();
    let tols = Tolerances::default();
    let mut rng = random::rng(102);
    let mut trials = 0usize;
    while trials < 500 {
        let n = rng.gen_range(2..=4);
        let g = random::subgroup(&mut rng, n);
        let reps = catalog_for(&g);
        let rep = &reps[rng.gen_range(0..reps.len())];
        let a = random::cmatrix(&mut rng, n);
        let b = random::cmatrix(&mut rng, n);
        let u1 = random::unit_vector(&mut rng, rep.dim());
        let u2 = random::unit_vector(&mut rng, rep.dim());

        let lhs = inner(
            &symmetrize(&g, rep, &u1, &a).unwrap(),
            &symmetrize(&g, rep, &u2, &b).unwrap(),
        )
        .unwrap();
        let m = gmf(&ab_star(&a, &b).unwrap(), &g, rep, &tols).unwrap();
        let rhs = vec_inner(&m.mul_vec(&u1), &u2) * g.order() as f64;
        assert!(
            (lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm() + rhs.norm()),
            "trial {trials}: |{lhs} - {rhs}|"
        );
        trials += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    pass(3, "Marcus identity <T(u1⊗x),T(u2⊗y)> = g(M_AB* u1,u2) on 500 trials");
}

#[test]
fn criterion_04_operator_algebra() {
    let mut rng = random::rng(103);
    for trial in 0..100 {
        let n = rng.gen_range(2..=4);
        let g = random::subgroup(&mut rng, n);
        let reps = catalog_for(&g);
        let rep = &reps[rng.gen_range(0..reps.len())];
        let v = random::tensor(&mut rng, rep.dim(), n);
        let w = random::tensor(&mut rng, rep.dim(), n);

        let tv = apply_symmetrizer(&g, rep, &v).unwrap();
        let ttv = apply_symmetrizer(&g, rep, &tv).unwrap();
        let scaled = tv.scale(c(g.order() as f64, 0.0));
        let idem = ttv.residual_from(c(1.0, 0.0), &scaled).unwrap();
        assert!(
            idem <= 1e-9 * scaled.norm_sq().sqrt().max(1e-6),
            "trial {trial}: idempotence residual {idem:.2e}"
        );

        let lhs = inner(&tv, &w).unwrap();
        let rhs = inner(&v, &apply_symmetrizer(&g, rep, &w).unwrap()).unwrap();
        assert!(
            (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0),
            "trial {trial}: self-adjointness"
        );
    }
    pass(4, "operator algebra T² = gT and T* = T on 100 random tensors");
}

#[test]
fn criterion_05_schur_bound_never_violated() {
    let tols = Tolerances::default();
    let mut rng = random::rng(104);
    for trial in 0..1000 {
        let n = rng.gen_range(2..=4);
        let h = random::pd_hermitian(&mut rng, n);
        let g = random::subgroup(&mut rng, n);
        let reps = catalog_for(&g);
        let rep = &reps[rng.gen_range(0..reps.len())];
        let u = random::unit_vector(&mut rng, rep.dim());
        let report = genmatfn::schur_check(&h, &g, rep, &u, &tols).unwrap();
        assert!(report.gap >= -1e-9, "trial {trial}: gap {}", report.gap);
        let (vals, _) = cxlinalg::herm_eig(&report.m_h).unwrap();
        assert!(vals[0] > 0.0, "trial {trial}: λ_min {}", vals[0]);
    }
    pass(5, "Schur bound and positive definiteness of M_H on 1000 trials");
}

#[test]
fn criterion_06_equality_chain_equivalence() {
    let started = Instant::now();
    let tols = Tolerances::default();
    let mut rng = random::rng(105);
    let positions = [(1usize, 2usize), (1, 3), (2, 3)];
    let mut cases = 0usize;
    let mut equalities = 0usize;

    for mask in 0u32..8 {
        let pattern: Vec<(usize, usize)> = positions
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, &rc)| rc)
            .collect();
        let a = random::upper_triangular_with_pattern(&mut rng, 3, &pattern);
        let h = ab_star(&a, &a).unwrap();
        for group in subgroups_of_s3() {
            for rep in catalog_for(&group) {
                // probes: eigenvectors of every transposition image, then
                // random units
                let mut probes: Vec<Vec<Complex64>> = Vec::new();
                for sigma in group.elements() {
                    if sigma.sign() == -1 && sigma.compose(sigma).is_identity() {
                        let m = rep.evaluate(sigma).unwrap();
                        let (_, vecs) = cxlinalg::herm_eig(m).unwrap();
                        for k in 0..rep.dim() {
                            probes.push((0..rep.dim()).map(|i| vecs[(i, k)]).collect());
                        }
                    }
                }
                for _ in 0..20 {
                    probes.push(random::unit_vector(&mut rng, rep.dim()));
                }
                for u in probes {
                    let report = equality_chain_report(&h, &group, &rep, &u, &tols).unwrap();
                    assert!(
                        report.chain.consistent(),
                        "pattern {pattern:?}, group order {}, rep dim {}, chain {:?}",
                        group.order(),
                        rep.dim(),
                        report.chain
                    );
                    cases += 1;
                    if report.chain.collinear {
                        equalities += 1;
                    }
                }
            }
        }
    }
    // the sweep must exercise both outcomes
    assert!(equalities > 0 && equalities < cases);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    pass(
        6,
        "equality chain agreed on all six conditions over the full n=3 sweep",
    );
}

#[test]
fn criterion_07_projection_identity() {
    let tols = Tolerances::default();
    let mut rng = random::rng(106);
    let mut checked = 0usize;
    for n in [3usize, 4] {
        for _ in 0..40 {
            let mut a = random::upper_triangular(&mut rng, n);
            // knock out a random column to guarantee interior lone-diagonal
            // columns beyond p = 1
            let cleared = rng.gen_range(1..=n);
            for i in 0..n {
                if i != cleared - 1 {
                    a[(i, cleared - 1)] = c(0.0, 0.0);
                }
            }
            let g = random::subgroup(&mut rng, n);
            let reps = catalog_for(&g);
            let rep = &reps[rng.gen_range(0..reps.len())];
            let u = random::unit_vector(&mut rng, rep.dim());
            for p in 1..=n {
                let lone = (0..n).all(|i| i == p - 1 || a[(i, p - 1)].norm() == 0.0);
                if !lone {
                    continue;
                }
                let residual =
                    tensorlab::projection_identity_check(&g, rep, &u, &a, p, &tols).unwrap();
                assert!(residual <= 1e-9, "n={n} p={p} residual {residual:.2e}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 100);
    pass(7, "projection identity on every lone-diagonal column");
}

#[test]
fn criterion_08_spike_combinatorics() {
    let tols = Tolerances::default();

    // counts against the closed form, enumeration vs construction
    for n in 2..=6usize {
        for r in 1..n {
            for col in (r + 1)..=n {
                let spike = schur_core::compat::SpikeFunction::new(r, col).unwrap();
                let enumerated =
                    schur_core::compat::compatible(&spike.multi_index(n).unwrap()).unwrap();
                let constructed = schur_core::compat::compatible_spike(n, r, col).unwrap();
                assert_eq!(enumerated.len(), 1 << (col - r));
                assert_eq!(enumerated, constructed);
            }
        }
    }

    // restricted sets of maximal row spikes on random supports
    let mut rng = random::rng(107);
    let mut spiked = 0usize;
    while spiked < 200 {
        let n = rng.gen_range(2..=6);
        let mut a = random::upper_triangular(&mut rng, n);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(0.5) {
                    a[(i, j)] = c(0.0, 0.0);
                }
            }
        }
        let col = rng.gen_range(2..=n);
        let Some(spike) = schur_core::compat::max_row_spike(&a, col, tols.zero).unwrap() else {
            continue;
        };
        let restricted = schur_core::compat::restricted_compatible(
            &spike.multi_index(n).unwrap(),
            &a,
            tols.zero,
        )
        .unwrap();
        let tau = Permutation::transposition(n, spike.r, spike.c).unwrap();
        assert_eq!(restricted, vec![Permutation::identity(n), tau]);
        spiked += 1;
    }

    // closed-form values of the spike pairings, with and without τ in G
    for trial in 0..50 {
        let n = 3 + (trial % 2);
        let mut a = random::upper_triangular(&mut rng, n);
        for i in 0..n {
            for j in (i + 1)..n {
                a[(i, j)] = c(0.0, 0.0);
            }
        }
        let r = rng.gen_range(1..n);
        let col = rng.gen_range(r + 1..=n);
        a[(r - 1, col - 1)] = random::phase(&mut rng);
        let spike = schur_core::compat::max_row_spike(&a, col, tols.zero)
            .unwrap()
            .unwrap();
        assert_eq!((spike.r, spike.c), (r, col));
        let alpha = spike.multi_index(n).unwrap();
        let tau = Permutation::transposition(n, r, col).unwrap();
        let mut diag_prod = c(1.0, 0.0);
        for i in 0..n {
            if i != r - 1 {
                diag_prod *= a[(i, i)];
            }
        }
        let expected_base = diag_prod * a[(r - 1, col - 1)];

        // τ ∈ G = S_n
        let g = PermGroup::symmetric(n).unwrap();
        let rep = UnitaryRep::builtin(BuiltinRep::SignPlusTrivial, &g).unwrap();
        let u = random::unit_vector(&mut rng, 2);
        let weight = vec_inner(&rep.evaluate(&tau).unwrap().mul_vec(&u), &u);
        let value = tensorlab::basis_inner(&g, &rep, &u, &a, &alpha, &tols).unwrap();
        assert!((value - (c(1.0, 0.0) + weight) * expected_base).norm() <= 1e-9);

        // τ ∉ G = A_n (transpositions are odd)
        let alt = PermGroup::alternating(n).unwrap();
        let rep = UnitaryRep::builtin(BuiltinRep::Trivial, &alt).unwrap();
        let u = random::unit_vector(&mut rng, 1);
        let value = tensorlab::basis_inner(&alt, &rep, &u, &a, &alpha, &tols).unwrap();
        assert!((value - expected_base).norm() <= 1e-9);
    }
    pass(8, "spike counts, restricted sets, and closed-form pairings");
}

#[test]
fn criterion_09_support_group_transport() {
    let tols = Tolerances::default();
    let mut rng = random::rng(108);
    for trial in 0..200 {
        let n = rng.gen_range(2..=5);
        let h = if trial % 2 == 0 {
            random::pd_block_diagonal(&mut rng, n)
        } else {
            random::pd_sparse(&mut rng, n)
        };
        let a = cxlinalg::upper_cholesky(&h, tols.linalg).unwrap();
        let (gh, _) = PermGroup::support_group(&h, tols.zero).unwrap();
        let (ga, _) = PermGroup::support_group(&a, tols.zero).unwrap();
        assert!(gh.same_group(&ga), "trial {trial}");
    }

    // fixture where the generating transpositions differ but the groups
    // coincide: H has support pairs {(1,3),(2,3)}; its factor fills (1,2)
    let h = CMatrix::from_real(&[&[2.0, 0.0, 1.0], &[0.0, 2.0, 1.0], &[1.0, 1.0, 2.0]]);
    let a = cxlinalg::upper_cholesky(&h, tols.linalg).unwrap();
    let (gh, h_pairs) = PermGroup::support_group(&h, tols.zero).unwrap();
    let (ga, a_pairs) = PermGroup::support_group(&a, tols.zero).unwrap();
    assert_eq!(h_pairs, vec![(1, 3), (2, 3)]);
    assert_eq!(a_pairs, vec![(1, 2), (1, 3), (2, 3)]);
    assert!(gh.same_group(&ga));
    assert_eq!(gh.order(), 6);
    pass(9, "support group of H equals support group of its factor");
}

#[test]
fn criterion_10_base_case_n2() {
    let tols = Tolerances::default();
    let s2 = PermGroup::symmetric(2).unwrap();
    let trivial = PermGroup::trivial(2);
    let tau = Permutation::transposition(2, 1, 2).unwrap();

    let mut checked = 0usize;
    for group in [trivial, s2] {
        let rep = UnitaryRep::builtin(BuiltinRep::SignPlusTrivial, &group).unwrap();
        let has_tau = group.contains(&tau);
        for a12_zero in [true, false] {
            let a = CMatrix::from_rows(vec![
                vec![c(1.2, 0.0), if a12_zero { c(0.0, 0.0) } else { c(0.7, 0.4) }],
                vec![c(0.0, 0.0), c(0.8, 0.0)],
            ])
            .unwrap();
            // 100-point grid over (t, φ): u = (cos t · e^{iφ}, sin t)
            for ti in 0..10 {
                for pi in 0..10 {
                    let t = std::f64::consts::FRAC_PI_2 * ti as f64 / 9.0;
                    let phi = std::f64::consts::TAU * pi as f64 / 10.0;
                    let u = [
                        c(t.cos() * phi.cos(), t.cos() * phi.sin()),
                        c(t.sin(), 0.0),
                    ];
                    let collinear = collinearity(&group, &rep, &u, &a, &tols)
                        .unwrap()
                        .is_some();
                    let sign_ok = if has_tau {
                        let m = rep.evaluate(&tau).unwrap();
                        (vec_inner(&m.mul_vec(&u), &u) + c(1.0, 0.0)).norm() <= 1e-8
                    } else {
                        false
                    };
                    let predicted = a12_zero || sign_ok;
                    assert_eq!(
                        collinear, predicted,
                        "group order {}, a12_zero {a12_zero}, t {t}, phi {phi}",
                        group.order()
                    );
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 400);
    pass(10, "n = 2 collinearity matches the closed-form condition");
}
