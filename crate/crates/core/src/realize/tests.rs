use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::corpus;
use crate::exactmath::Field;

fn table(labels: &[&str], products: &[(&str, &str, &str)]) -> FusionTable {
    FusionTable::from_named(labels, products).unwrap()
}

fn solvable4() -> FusionTable {
    table(
        &["alpha", "beta", "gamma"],
        &[
            ("alpha", "alpha", "alpha"),
            ("alpha", "beta", "gamma"),
            ("alpha", "gamma", "beta"),
        ],
    )
}

fn semisimple6() -> FusionTable {
    table(
        &["alpha", "beta", "gamma", "delta", "mu"],
        &[
            ("alpha", "beta", "beta"),
            ("alpha", "gamma", "gamma"),
            ("beta", "gamma", "alpha"),
            ("alpha", "delta", "mu"),
            ("alpha", "mu", "delta"),
            ("delta", "mu", "alpha"),
        ],
    )
}

fn remark3() -> FusionTable {
    table(&["x", "y", "z"], &[("x", "z", "z"), ("y", "z", "z")])
}

fn constant3() -> FusionTable {
    let l = ["alpha", "beta", "gamma"];
    let mut products = Vec::new();
    for (i, a) in l.iter().enumerate() {
        for b in &l[i..] {
            products.push((*a, *b, "alpha"));
        }
    }
    table(&l, &products)
}

fn all_modes(t: &FusionTable) -> Vec<RealizeOutcome> {
    Mode::ALL
        .iter()
        .map(|&m| realize(t, m, &SearchLimits::default()))
        .collect()
}

fn derivation(o: &RealizeOutcome) -> &DerivationCertificate {
    match o.refutation() {
        Some(Refutation::Derivation(d)) => d,
        other => panic!("expected a derivation, got {other:?}"),
    }
}

#[test]
fn builtin_tables_match_handwritten_ones() {
    let q = Field::Rationals;
    assert_eq!(corpus::solvable4_grading(q).fusion_table(), solvable4());
    assert_eq!(corpus::semisimple6_grading(q).fusion_table(), semisimple6());
    assert_eq!(corpus::remark3_grading(q).fusion_table(), remark3());
}

#[test]
fn solvable4_collapses_beta_and_gamma_in_every_mode() {
    let t = solvable4();
    for o in all_modes(&t) {
        assert_eq!(o.status(), Status::NotRealizable, "{:?}", o.mode);
        let (g, h) = o.refutation().unwrap().pair();
        assert_eq!((g.min(h), g.max(h)), (1, 2));
        assert!(verify_certificate(&t, &o).unwrap());
        if o.mode != Mode::Group {
            assert!(
                derivation(&o).steps.len() <= 6,
                "{}",
                derivation(&o).chain_text(t.labels())
            );
        }
    }
}

#[test]
fn solvable4_noncommutative_chain_uses_positions() {
    let t = solvable4();
    let o = realize_semigroup(&t, &SearchLimits::default());
    let d = derivation(&o);
    assert!(!d.commutative);
    assert!(d.steps.iter().all(|s| s.justification.position.is_some()));
}

#[test]
fn semisimple6_collapses_delta_and_mu_through_alpha_squared() {
    let t = semisimple6();
    for o in all_modes(&t) {
        assert_eq!(o.status(), Status::NotRealizable, "{:?}", o.mode);
        let (g, h) = o.refutation().unwrap().pair();
        assert_eq!((g.min(h), g.max(h)), (3, 4));
        assert!(verify_certificate(&t, &o).unwrap());
        match o.refutation().unwrap() {
            Refutation::Derivation(d) => {
                // some word passes through alpha^2 times something
                assert!(d
                    .words()
                    .any(|w| w.iter().filter(|&&x| x == 0).count() >= 2));
            }
            Refutation::Lattice(c) => {
                assert!(c
                    .combination
                    .iter()
                    .any(|(r, _)| r.right == 1 || r.right == 2));
            }
        }
    }
}

#[test]
fn remark3_needs_a_semigroup() {
    let t = remark3();
    let g = realize_abelian_group(&t);
    assert_eq!(g.status(), Status::NotRealizable);
    assert_eq!(g.refutation().unwrap().pair(), (0, 1));
    assert!(verify_certificate(&t, &g).unwrap());

    let a = realize_abelian_semigroup(&t);
    assert_eq!(a.status(), Status::Realizable);
    assert!(verify_certificate(&t, &a).unwrap());

    let s = realize_semigroup(&t, &SearchLimits::default());
    assert_eq!(s.status(), Status::Realizable);
    assert!(verify_certificate(&t, &s).unwrap());
}

#[test]
fn remark3_constant_model_verifies() {
    let t = remark3();
    let model = ModelWitness {
        size: 3,
        table: vec![vec![2; 3]; 3],
    };
    for mode in [Mode::AbelianSemigroup, Mode::Semigroup] {
        let o = RealizeOutcome {
            mode,
            verdict: Verdict::Realizable(Witness::Model(model.clone())),
        };
        assert!(verify_certificate(&t, &o).unwrap());
    }
    // a group cannot be witnessed by a model
    let o = RealizeOutcome {
        mode: Mode::Group,
        verdict: Verdict::Realizable(Witness::Model(model)),
    };
    assert!(!verify_certificate(&t, &o).unwrap());
}

#[test]
fn fine_grading_lives_in_z_times_klein_four() {
    let t = corpus::semisimple6_fine_grading(Field::Rationals).fusion_table();
    let o = realize_abelian_group(&t);
    assert!(verify_certificate(&t, &o).unwrap());
    let Some(Witness::Group(w)) = o.witness() else {
        panic!("expected a group witness: {o:?}")
    };
    assert_eq!(w.free_rank, 1);
    assert_eq!(w.torsion, vec![BigInt::from(2), BigInt::from(2)]);
    let at = |name: &str| &w.assignment[t.index_of(name).unwrap()];
    assert!(at("h").iter().all(|x| *x == BigInt::from(0)));
    assert_eq!(at("x")[0], -at("y")[0].clone());
    assert_ne!(at("x")[0], BigInt::from(0));
    for e in ["e1", "e2", "e3"] {
        assert_eq!(at(e)[0], BigInt::from(0));
        assert!(at(e)[1..].iter().any(|x| *x != BigInt::from(0)));
    }
}

#[test]
fn constant_table_is_realizable() {
    let t = constant3();
    for o in all_modes(&t) {
        assert!(verify_certificate(&t, &o).unwrap());
        // in a group alpha*alpha = alpha forces alpha = 0, then beta = gamma = 0
        let expected = if o.mode == Mode::Group {
            Status::NotRealizable
        } else {
            Status::Realizable
        };
        assert_eq!(o.status(), expected, "{:?}", o.mode);
    }
}

#[test]
fn idempotent_singleton() {
    let t = table(&["alpha"], &[("alpha", "alpha", "alpha")]);
    let o = realize_semigroup(&t, &SearchLimits::default());
    assert_eq!(
        o.witness(),
        Some(&Witness::Model(ModelWitness {
            size: 1,
            table: vec![vec![0]]
        }))
    );
    assert!(verify_certificate(&t, &o).unwrap());
}

#[test]
fn empty_table_on_one_label() {
    let t = table(&["alpha"], &[]);
    let o = realize_abelian_group(&t);
    assert_eq!(o.status(), Status::Realizable);
    assert!(verify_certificate(&t, &o).unwrap());
}

#[test]
fn tampered_certificates_fail() {
    let t = solvable4();
    for o in all_modes(&t) {
        let mut bad = o.clone();
        match &mut bad.verdict {
            Verdict::NotRealizable(Refutation::Derivation(d)) => {
                d.steps.remove(d.steps.len() / 2);
            }
            Verdict::NotRealizable(Refutation::Lattice(c)) => {
                c.combination.pop();
            }
            _ => unreachable!(),
        }
        assert!(!verify_certificate(&t, &bad).unwrap(), "{:?}", o.mode);
    }
    // a commutative chain does not refute noncommutative realizability
    let mut o = realize_abelian_semigroup(&t);
    o.mode = Mode::Semigroup;
    assert!(!verify_certificate(&t, &o).unwrap());
    // certificates are checked against the given table
    let other = constant3();
    assert!(!verify_certificate(&other, &realize_abelian_semigroup(&t)).unwrap());
}

#[test]
fn unknown_outcomes_carry_nothing() {
    let o = RealizeOutcome {
        mode: Mode::Semigroup,
        verdict: Verdict::Unknown(SearchLimits::default()),
    };
    assert_eq!(
        verify_certificate(&solvable4(), &o),
        Err(CertificateError::NoCertificate)
    );
}

#[test]
fn chain_text_mirrors_paper_notation() {
    let t = solvable4();
    let o = realize_abelian_semigroup(&t);
    let text = derivation(&o).chain_text(t.labels());
    assert!(text.starts_with("beta = "), "{text}");
    assert!(text.ends_with(" = gamma"), "{text}");
}

#[test]
fn shorten_cuts_loops() {
    let j = Justification {
        relation: Relation {
            left: (0, 0),
            right: 0,
        },
        direction: Direction::Forward,
        position: None,
    };
    let step = |w: Vec<usize>| Step {
        justification: j.clone(),
        word: w,
    };
    let (start, steps) = shorten(
        vec![1],
        vec![step(vec![0, 1]), step(vec![1]), step(vec![2])],
    );
    assert_eq!(start, vec![1]);
    assert_eq!(steps, vec![step(vec![2])]);
}

// ----- brute force oracle over every table on at most three labels -----

fn all_tables(n: usize) -> Vec<FusionTable> {
    let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let choices = n + 1;
    let total = choices.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut products = Vec::new();
            for &(a, b) in &pairs {
                let c = code % choices;
                code /= choices;
                if c > 0 {
                    products.push((a, b, c - 1));
                }
            }
            FusionTable::new(labels.clone(), &products).unwrap()
        })
        .collect()
}

fn associative(t: &[Vec<usize>]) -> bool {
    let s = t.len();
    (0..s).all(|a| (0..s).all(|b| (0..s).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

/// All associative operations on a three element carrier.
fn associative_tables_on_three() -> Vec<Vec<Vec<usize>>> {
    (0..3usize.pow(9))
        .map(|mut code| {
            (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = code % 3;
                            code /= 3;
                            v
                        })
                        .collect()
                })
                .collect::<Vec<Vec<usize>>>()
        })
        .filter(|t| associative(t))
        .collect()
}

fn satisfies(t: &FusionTable, op: &[Vec<usize>]) -> bool {
    (0..t.len()).all(|a| (0..t.len()).all(|b| t.product(a, b).is_none_or(|c| op[a][b] == c)))
}

/// Naive backtracking over all operations on `size` elements; checks
/// associativity only on fully known triples.
fn some_model(t: &FusionTable, size: usize) -> bool {
    fn go(op: &mut Vec<Vec<Option<usize>>>, k: usize, size: usize) -> bool {
        let ok = (0..size).all(|a| {
            (0..size).all(|b| {
                (0..size).all(|c| {
                    let l = op[a][b].and_then(|ab| op[ab][c]);
                    let r = op[b][c].and_then(|bc| op[a][bc]);
                    l.zip(r).is_none_or(|(l, r)| l == r)
                })
            })
        });
        if !ok {
            return false;
        }
        if k == size * size {
            return true;
        }
        let (a, b) = (k / size, k % size);
        if op[a][b].is_some() {
            return go(op, k + 1, size);
        }
        for v in 0..size {
            op[a][b] = Some(v);
            if go(op, k + 1, size) {
                return true;
            }
        }
        op[a][b] = None;
        false
    }
    let mut op = vec![vec![None; size]; size];
    for (a, b, c) in t.entries() {
        op[a][b] = Some(c);
        op[b][a] = Some(c);
    }
    go(&mut op, 0, size)
}

#[test]
fn deciders_agree_with_brute_force_on_small_tables() {
    let models = associative_tables_on_three();
    for n in 1..=3 {
        for t in all_tables(n) {
            let group = realize_abelian_group(&t);
            let abelian = realize_abelian_semigroup(&t);
            let semi = realize_semigroup(&t, &SearchLimits::default());
            for o in [&group, &abelian, &semi] {
                assert_ne!(o.status(), Status::Unknown, "{t}");
                assert!(verify_certificate(&t, o).unwrap(), "{t} {:?}", o.mode);
            }
            // implication chain
            if group.status() == Status::Realizable {
                assert_eq!(abelian.status(), Status::Realizable, "{t}");
            }
            assert_eq!(
                abelian.status() == Status::Realizable,
                semi.status() == Status::Realizable,
                "{t}"
            );

            let commutative_model = models
                .iter()
                .filter(|m| (0..3).all(|a| (0..3).all(|b| m[a][b] == m[b][a])))
                .any(|m| satisfies(&t, m));
            if commutative_model {
                assert_eq!(abelian.status(), Status::Realizable, "{t}");
            }
            if abelian.status() == Status::NotRealizable {
                for size in n..=4 {
                    assert!(!some_model(&t, size), "{t} has a model of size {size}");
                }
            }
        }
    }
}

fn arb_table() -> impl Strategy<Value = FusionTable> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs = n * (n + 1) / 2;
        proptest::collection::vec(0..=n, pairs).prop_map(move |codes| {
            let labels: Vec<String> = (0..n).map(|i| format!("l{i}")).collect();
            let mut products = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a..n {
                    if codes[k] > 0 {
                        products.push((a, b, codes[k] - 1));
                    }
                    k += 1;
                }
            }
            FusionTable::new(labels, &products).unwrap()
        })
    })
}

fn relabel_relation(r: &Relation, map: &[usize]) -> Relation {
    let (a, b) = (map[r.left.0], map[r.left.1]);
    Relation {
        left: (a.min(b), a.max(b)),
        right: map[r.right],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_outcome_verifies(t in arb_table()) {
        let limits = SearchLimits { max_model_nodes: 50_000, max_pairs: 20_000, ..SearchLimits::default() };
        let group = realize_abelian_group(&t);
        let abelian = realize_abelian_semigroup(&t);
        let semi = realize_semigroup(&t, &limits);
        prop_assert!(verify_certificate(&t, &group).unwrap());
        prop_assert!(verify_certificate(&t, &abelian).unwrap());
        if semi.status() != Status::Unknown {
            prop_assert!(verify_certificate(&t, &semi).unwrap());
        }
        if group.status() == Status::Realizable {
            prop_assert_eq!(abelian.status(), Status::Realizable);
        }
        if abelian.status() == Status::Realizable {
            prop_assert_eq!(semi.status(), Status::Realizable);
        }
    }

    #[test]
    fn group_decider_is_equivariant(t in arb_table(), seed in any::<u64>()) {
        let n = t.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut inverse = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let moved = t.permuted(&perm);
        let before = realize_abelian_group(&t);
        let after = realize_abelian_group(&moved);
        prop_assert_eq!(before.status(), after.status());
        match (&before.verdict, &after.verdict) {
            (Verdict::Realizable(Witness::Group(a)), Verdict::Realizable(Witness::Group(b))) => {
                prop_assert_eq!(a.free_rank, b.free_rank);
                prop_assert_eq!(&a.torsion, &b.torsion);
                // the permuted assignment still realizes the original table
                let assignment = (0..n).map(|i| b.assignment[perm[i]].clone()).collect();
                let pulled = RealizeOutcome {
                    mode: Mode::Group,
                    verdict: Verdict::Realizable(Witness::Group(GroupWitness { assignment, ..b.clone() })),
                };
                prop_assert!(verify_certificate(&t, &pulled).unwrap());
            }
            (Verdict::NotRealizable(Refutation::Lattice(a)), Verdict::NotRealizable(Refutation::Lattice(b))) => {
                let pulled = LatticeCertificate {
                    pair: (inverse[b.pair.0], inverse[b.pair.1]),
                    combination: b.combination.iter().map(|(r, k)| (relabel_relation(r, &inverse), k.clone())).collect(),
                };
                let o = RealizeOutcome { mode: Mode::Group, verdict: Verdict::NotRealizable(Refutation::Lattice(pulled)) };
                prop_assert!(verify_certificate(&t, &o).unwrap());
                // and the original collapse is seen in the moved table
                let pushed = LatticeCertificate {
                    pair: (perm[a.pair.0], perm[a.pair.1]),
                    combination: a.combination.iter().map(|(r, k)| (relabel_relation(r, &perm), k.clone())).collect(),
                };
                let o = RealizeOutcome { mode: Mode::Group, verdict: Verdict::NotRealizable(Refutation::Lattice(pushed)) };
                prop_assert!(verify_certificate(&moved, &o).unwrap());
            }
            other => prop_assert!(false, "unexpected verdicts {:?}", other),
        }
    }
}
