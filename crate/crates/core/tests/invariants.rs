//! Cross-module invariant sweeps that go beyond the per-module unit tests:
//! braid identities across every rank <= 4 pair, classical root counts for
//! every supported system, action laws on random rational weights, and
//! weight bookkeeping under the operator action.

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use vermadiff::chevalley::compute_constants;
use vermadiff::liediff::build_ops;
use vermadiff::oracle::weight_basis;
use vermadiff::rat::{rat, ratio, Rat};
use vermadiff::rootsys::{
    build_root_system, dot_action, enumerate_weyl, lex_ordering, strongly_linked, CartanType,
    VarKind, Weight, WeylWord,
};
use vermadiff::weylalg::{SKey, Series};
use vermadiff::weylrep::WeylCtx;

fn all_types_rank_le8() -> Vec<(CartanType, usize)> {
    let mut v = Vec::new();
    for n in 1..=8 {
        v.push((CartanType::A, n));
    }
    for n in 2..=8 {
        v.push((CartanType::B, n));
        v.push((CartanType::C, n));
    }
    for n in 4..=8 {
        v.push((CartanType::D, n));
    }
    for n in 6..=8 {
        v.push((CartanType::E, n));
    }
    v.push((CartanType::F, 4));
    v.push((CartanType::G, 2));
    v
}

fn classical_count(t: CartanType, n: usize) -> usize {
    match t {
        CartanType::A => n * (n + 1) / 2,
        CartanType::B | CartanType::C => n * n,
        CartanType::D => n * (n - 1),
        CartanType::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        CartanType::F => 24,
        CartanType::G => 6,
    }
}

#[test]
fn every_supported_system_has_classical_count_and_monotone_layers() {
    for (t, n) in all_types_rank_le8() {
        let rs = build_root_system(t, n).unwrap();
        assert_eq!(rs.m, classical_count(t, n), "{t}{n}");
        let sizes: Vec<usize> = rs.layers.iter().map(|l| l.len()).collect();
        assert_eq!(sizes[0], n);
        assert_eq!(*sizes.last().unwrap(), 1);
        for k in 1..sizes.len() {
            assert!(sizes[k - 1] >= sizes[k], "{t}{n}: layer sizes {sizes:?}");
        }
    }
}

#[test]
fn dot_action_group_law_on_random_weights() {
    let mut rng = StdRng::seed_from_u64(11);
    for (t, n) in [(CartanType::B, 3), (CartanType::G, 2), (CartanType::A, 4)] {
        let rs = build_root_system(t, n).unwrap();
        for _ in 0..20 {
            let lam = Weight::new(
                (0..n)
                    .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
                    .collect(),
            );
            let w1 = WeylWord(
                (0..rng.gen_range(0..5))
                    .map(|_| rng.gen_range(0..n))
                    .collect(),
            );
            let w2 = WeylWord(
                (0..rng.gen_range(0..5))
                    .map(|_| rng.gen_range(0..n))
                    .collect(),
            );
            let mut cat = w1.0.clone();
            cat.extend(&w2.0);
            assert_eq!(
                dot_action(&rs, &w1, &dot_action(&rs, &w2, &lam)),
                dot_action(&rs, &WeylWord(cat), &lam),
                "{t}{n}"
            );
        }
    }
}

#[test]
fn linked_weights_lie_in_the_dot_orbit() {
    let mut rng = StdRng::seed_from_u64(13);
    for (t, n) in [(CartanType::A, 2), (CartanType::B, 2)] {
        let rs = build_root_system(t, n).unwrap();
        let orbit_words = enumerate_weyl(&rs, 100).unwrap();
        for _ in 0..10 {
            let lam = Weight::new((0..n).map(|_| rat(rng.gen_range(-3..=3))).collect());
            for (mu, _) in vermadiff::singvec::all_singular_weights(&rs, &lam, 10) {
                let in_orbit = orbit_words.iter().any(|w| dot_action(&rs, w, &lam) == mu);
                assert!(in_orbit, "{t}{n}: linked weight off the orbit");
            }
        }
    }
}

#[test]
fn braid_identities_hold_for_every_rank_le4_pair() {
    let mut rng = StdRng::seed_from_u64(17);
    let types = [
        (CartanType::A, 2),
        (CartanType::A, 3),
        (CartanType::A, 4),
        (CartanType::B, 2),
        (CartanType::B, 3),
        (CartanType::B, 4),
        (CartanType::C, 3),
        (CartanType::C, 4),
        (CartanType::D, 4),
        (CartanType::F, 4),
        (CartanType::G, 2),
    ];
    for (t, n) in types {
        let rs = build_root_system(t, n).unwrap();
        let ord = lex_ordering(&rs);
        let sc = compute_constants(&rs).unwrap();
        let lam = Weight::new(
            (0..n)
                .map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
                .collect(),
        );
        let ctx = WeylCtx::new(&rs, &ord, &sc, lam, 10).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                for _ in 0..3 {
                    let c1 = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4));
                    let c2 = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4));
                    for probe in [Series::one(&ord), random_weighted(&mut rng, &rs, &ord)] {
                        assert!(
                            ctx.verify_braid(i, j, &c1, &c2, &probe).unwrap(),
                            "{t}{n} braid ({i},{j}) m={}",
                            ctx.braid_order(i, j)
                        );
                    }
                }
            }
        }
    }
}

fn random_weighted(
    rng: &mut StdRng,
    rs: &vermadiff::rootsys::RootSystem,
    ord: &vermadiff::rootsys::RootOrder,
) -> Series {
    loop {
        let z: Vec<i64> = (0..rs.rank).map(|_| rng.gen_range(0..=1)).collect();
        let basis = weight_basis(rs, ord, &z);
        if basis.is_empty() {
            continue;
        }
        let mut f = Series::zero(ord);
        for mon in basis.iter().take(2) {
            let mut s = vec![Rat::zero(); ord.n];
            let mut r = vec![0u16; ord.m - ord.n];
            for (p, &e) in mon.iter().enumerate() {
                match ord.kind[p] {
                    VarKind::Simple(di) => s[di] = rat(e as i64),
                    VarKind::Rest(slot) => r[slot] = e,
                }
            }
            f.push(
                SKey {
                    s: s.into(),
                    r: r.into(),
                },
                ratio(rng.gen_range(1..=5), 2),
            );
        }
        if !f.is_zero() {
            return f;
        }
    }
}

#[test]
fn weight_homogeneous_operators_shift_weights() {
    let rs = build_root_system(CartanType::C, 2).unwrap();
    let ord = lex_ordering(&rs);
    let sc = compute_constants(&rs).unwrap();
    let lam = Weight::new(vec![ratio(1, 2), ratio(-3, 7)]);
    let ops = build_ops(&rs, &ord, &sc, &lam).unwrap();
    let mut rng = StdRng::seed_from_u64(19);
    for _ in 0..10 {
        let f = random_weighted(&mut rng, &rs, &ord);
        let mu = f.weight_of(&rs, &ord, &lam).expect("weighted probe");
        for p in 0..rs.m {
            let id = ord.root_id(p);
            // eta lowers the weight by the root; d raises it
            let low = f.apply(&ops.eta[p], &ord).unwrap();
            if !low.is_zero() {
                let got = low.weight_of(&rs, &ord, &lam).expect("eta image weighted");
                let expect = Weight::new(
                    (0..rs.rank)
                        .map(|jj| &mu.c[jj] - rat(rs.roots[id].pairings[jj]))
                        .collect(),
                );
                assert_eq!(got, expect);
            }
            let up = f.apply(&ops.d[p], &ord).unwrap();
            if !up.is_zero() {
                let got = up.weight_of(&rs, &ord, &lam).expect("d image weighted");
                let expect = Weight::new(
                    (0..rs.rank)
                        .map(|jj| &mu.c[jj] + rat(rs.roots[id].pairings[jj]))
                        .collect(),
                );
                assert_eq!(got, expect);
            }
        }
        // zeta acts by the weight pairing
        for di in 0..rs.rank {
            let z = f.apply(&ops.zeta[di], &ord).unwrap();
            assert!(z.eq_within_depth(&f.scale(&mu.c[di]), &ord));
        }
    }
}

#[test]
fn rank3_orbit_solutions() {
    // complements the rank-2 sweep in the acceptance suite
    let mut rng = StdRng::seed_from_u64(23);
    for (t, n) in [(CartanType::A, 3), (CartanType::C, 3)] {
        let rs = build_root_system(t, n).unwrap();
        let ord = lex_ordering(&rs);
        let sc = compute_constants(&rs).unwrap();
        let lam = Weight::new(
            (0..n)
                .map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(2..=3)))
                .collect(),
        );
        let ctx = WeylCtx::new(&rs, &ord, &sc, lam.clone(), 10).unwrap();
        for w in enumerate_weyl(&rs, 100)
            .unwrap()
            .into_iter()
            .filter(|w| w.0.len() <= 3)
        {
            let f = ctx.w1(&w).unwrap();
            assert_eq!(
                f.weight_of(&rs, &ord, &lam).as_ref(),
                Some(&dot_action(&rs, &w, &lam))
            );
            for di in 0..n {
                let g = f.apply(&ctx.ops.d[ord.delta_pos[di]], &ord).unwrap();
                assert!(g.is_zero_within_depth(&ord), "{t}{n} {w}");
            }
            // and the linkage criterion agrees with the window
            let mu = dot_action(&rs, &w, &lam);
            let linked = strongly_linked(&rs, &lam, &mu).is_some();
            assert_eq!(f.is_polynomial_window(), linked, "{t}{n} {w}");
        }
    }
}

#[test]
fn truncation_depth_is_consistent_across_budgets() {
    // coefficients reported at a shallow depth must agree with a deeper run
    let rs = build_root_system(CartanType::G, 2).unwrap();
    let ord = lex_ordering(&rs);
    let sc = compute_constants(&rs).unwrap();
    let lam = Weight::new(vec![ratio(2, 5), ratio(-1, 3)]);
    let shallow = WeylCtx::new(&rs, &ord, &sc, lam.clone(), 6).unwrap();
    let deep = WeylCtx::new(&rs, &ord, &sc, lam, 13).unwrap();
    for word in [vec![0, 1], vec![1, 0, 1], vec![0, 1, 0, 1]] {
        let w = WeylWord(word);
        let a = shallow.w1(&w).unwrap();
        let b = deep.w1(&w).unwrap();
        assert!(
            a.eq_within_depth(&b, &ord),
            "{w} disagrees within common depth"
        );
        // None means the fold stayed exact; otherwise the shallow run must
        // not claim more than the deep one
        if let (Some(da), Some(db)) = (a.depth, b.depth) {
            assert!(da <= db, "{w}: shallow depth {da} > deep depth {db}");
        }
    }
}

#[test]
fn solver_vectors_equal_oracle_kernel_vectors() {
    // when the polynomial branch is taken, the extracted PBW vector must
    // coincide (after normalization) with the brute-force kernel basis
    let mut rng = StdRng::seed_from_u64(29);
    for (t, n) in [
        (CartanType::A, 2),
        (CartanType::B, 2),
        (CartanType::C, 2),
        (CartanType::G, 2),
    ] {
        let rs = build_root_system(t, n).unwrap();
        let ord = lex_ordering(&rs);
        let sc = compute_constants(&rs).unwrap();
        let words: Vec<WeylWord> = enumerate_weyl(&rs, 100)
            .unwrap()
            .into_iter()
            .filter(|w| w.0.len() <= 3)
            .collect();
        let mut matched = 0;
        for _ in 0..6 {
            let lam = Weight::new((0..n).map(|_| rat(rng.gen_range(-2..=2))).collect());
            for w in &words {
                let mu = dot_action(&rs, w, &lam);
                let need = match vermadiff::rootsys::alpha_coords_of_diff(&rs, &lam, &mu) {
                    Some(z) if z.iter().all(|&v| v >= 0) => z.iter().sum::<i64>(),
                    _ => continue,
                };
                if need > 14 || strongly_linked(&rs, &lam, &mu).is_none() {
                    continue;
                }
                let ctx = WeylCtx::new(&rs, &ord, &sc, lam.clone(), need.max(12)).unwrap();
                let outcome = vermadiff::singvec::solve_singular(&ctx, w).unwrap();
                let vermadiff::singvec::SolveOutcome::Polynomial { vector, .. } = outcome else {
                    panic!("{t}{n}: linked weight must give the polynomial branch");
                };
                let kern = vermadiff::oracle::singular_kernel(&rs, &ord, &sc, &lam, &mu);
                assert_eq!(kern.len(), 1, "{t}{n} {w}: kernel dimension");
                assert_eq!(vector, kern[0], "{t}{n} {w}: vector mismatch");
                matched += 1;
            }
        }
        assert!(matched > 10, "{t}{n}: sweep too thin ({matched})");
    }
}
