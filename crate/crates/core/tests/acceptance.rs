//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails or overruns its time budget.

mod common;

use std::time::{Duration, Instant};

use lefschetz_core::arith::binomial;
use lefschetz_core::corpus::{self, exhaustive, nonisomorphic_trees, random_connected, random_graph, random_loose_tree};
use lefschetz_core::grothendieck::surgery_by_components;
use lefschetz_core::loose_graph::named::*;
use lefschetz_core::monoid::{hom_count, localize, maximal_ideal, spec, DEFAULT_BOUND};
use lefschetz_core::oracle::enumerate_points;
use lefschetz_core::qanalog::{gauss_binomial, gl_order, permutations, MonomialMatrix};
use lefschetz_core::zeta::{
    counting_series, euler_characteristic, limit_check, local_zeta_series, render_arithmetic_zeta,
    zeta_from_polynomial, ZetaStyle,
};
use lefschetz_core::{class_of, surgery, tree_class, LPolynomial, LooseGraph, MonoidPresentation, ZetaF1};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

type Outcome = Result<String, String>;

/// Name, time budget and check of one criterion.
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

const SEED: u64 = 0x5eed;

fn p(c: &[i64]) -> LPolynomial {
    LPolynomial::from_i64s(c)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Exhaustive graphs with at most 5 ambient coordinates plus 200 seeded
/// random graphs with at most 7.
fn oracle_corpus() -> Vec<LooseGraph> {
    let mut out = exhaustive(5);
    let mut rng = corpus::rng(SEED);
    out.extend((0..200).map(|_| random_graph(&mut rng, 7)));
    out
}

fn c1_gamma() -> Outcome {
    let g = class_of(&gamma_uv(2));
    ensure(g == p(&[2, 0, 1, 1]), || format!("Γ gave {g}"))?;
    let r = class_of(&gamma_uv_resolved(2));
    ensure(r == p(&[4, -4, 2, 2]), || format!("Γ_uv gave {r}"))?;
    Ok(format!("{g}; {r}"))
}

fn c2_complete_and_affine() -> Outcome {
    for m in 1..=6 {
        let k = class_of(&complete(m + 1));
        ensure(k == p(&vec![1; m + 1]), || format!("K_{} gave {k}", m + 1))?;
        let a = class_of(&affine_star(m));
        ensure(a == LPolynomial::monomial(1, m), || format!("star {m} gave {a}"))?;
    }
    Ok("m = 1..6".into())
}

fn c3_trees() -> Outcome {
    let mut checked = 0;
    for n in 1..=8 {
        for t in nonisomorphic_trees(n) {
            let (a, b) = (tree_class(&t).map_err(|e| e.to_string())?, class_of(&t));
            ensure(a == b, || format!("{}: tree {a} vs {b}", t.render()))?;
            checked += 1;
        }
    }
    let mut rng = corpus::rng(SEED);
    for _ in 0..100 {
        let t = random_loose_tree(&mut rng, 8, 4);
        let (a, b) = (tree_class(&t).map_err(|e| e.to_string())?, class_of(&t));
        ensure(a == b, || format!("{}: tree {a} vs {b}", t.render()))?;
        checked += 1;
    }
    Ok(format!("{checked} trees"))
}

fn c4_oracle(graphs: &[LooseGraph]) -> Outcome {
    for g in graphs {
        let class = class_of(g);
        for q in [2u64, 3, 5] {
            let n = enumerate_points(g, q).map_err(|e| e.to_string())?;
            let expected = class.eval_i64(q as i64);
            ensure(expected == BigInt::from(n), || {
                format!("{} at q={q}: class {expected}, oracle {n}", g.render())
            })?;
        }
    }
    Ok(format!("{} graphs × 3 primes", graphs.len()))
}

fn c5_surgery(graphs: &[LooseGraph]) -> Outcome {
    for g in graphs {
        let s = surgery_by_components(g).map_err(|e| e.to_string())?;
        let c = class_of(g);
        ensure(s == c, || format!("{}: surgery {s} vs {c}", g.render()))?;
    }
    let mut rng = corpus::rng(SEED + 5);
    let mut runs = 0usize;
    for i in 0..20 {
        let g = random_connected(&mut rng, 2 + i % 4, 0.45);
        let reference = class_of(&g);
        for tree in g.all_spanning_trees().map_err(|e| e.to_string())? {
            let rest: Vec<_> = g.full_edges().map(|(t, _, _)| t).filter(|t| !tree.contains(t)).collect();
            for perm in permutations(rest.len()) {
                let order: Vec<_> = perm.iter().map(|&j| rest[j]).collect();
                let (s, _) = lefschetz_core::grothendieck::surgery_with(&g, &tree, &order)
                    .map_err(|e| e.to_string())?;
                ensure(s == reference, || {
                    format!("{}: order {order:?} gave {s}, expected {reference}", g.render())
                })?;
                runs += 1;
            }
        }
    }
    let (s, _) = surgery(&gamma_uv(2)).map_err(|e| e.to_string())?;
    ensure(s == p(&[2, 0, 1, 1]), || format!("Γ surgery gave {s}"))?;
    Ok(format!("{} corpus graphs, {runs} tree/order runs", graphs.len()))
}

fn c6_affection(graphs: &[LooseGraph]) -> Outcome {
    let mut edges = 0;
    for g in graphs {
        for (e, x, y) in g.full_edges() {
            let mut ball = g.ball(x, 1).map_err(|e| e.to_string())?;
            ball.extend(g.ball(y, 1).map_err(|e| e.to_string())?);
            let ge = g.resolve_edge(e).map_err(|e| e.to_string())?;
            let global = class_of(g) - class_of(&ge);
            let local = class_of(&g.restrict(&ball)) - class_of(&ge.restrict(&ball));
            ensure(global == local, || {
                format!("{} edge {e}: global {global}, local {local}", g.render())
            })?;
            edges += 1;
        }
    }
    Ok(format!("{edges} edges"))
}

fn c7_kurokawa() -> Outcome {
    let graphs = common::named_graphs();
    ensure(graphs.len() >= 10, || "need 10 graphs".into())?;
    for (name, g) in &graphs {
        let c = class_of(g);
        for prime in [2u64, 3] {
            let local = local_zeta_series(&c, prime, 10);
            let counted = counting_series(&c, prime, 10);
            let direct = common::local_zeta_direct(&c, prime, 10);
            ensure(local.coeffs() == counted.coeffs(), || format!("{name} p={prime}: series differ"))?;
            ensure(local.coeffs() == direct.as_slice(), || format!("{name} p={prime}: binomial oracle differs"))?;
        }
    }
    Ok(format!("{} graphs, p ∈ {{2,3}}, order 10", graphs.len()))
}

fn c8_zeta_examples() -> Outcome {
    let shifted = |k: usize| if k == 0 { "ζ(s)".to_string() } else { format!("ζ(s−{k})") };
    for n in 0..=4usize {
        let a = class_of(&affine_star(n));
        let ra = render_arithmetic_zeta(&a, ZetaStyle::Unicode);
        ensure(ra == shifted(n), || format!("A^{n} rendered {ra}"))?;
        let za = zeta_from_polynomial(&a);
        ensure(za == ZetaF1::from_exponents([(n, BigInt::from(1))]), || format!("A^{n}: {za:?}"))?;

        let pn = class_of(&complete(n + 1));
        let rp = render_arithmetic_zeta(&pn, ZetaStyle::Unicode);
        let expected: String = (0..=n).map(shifted).collect();
        ensure(rp == expected, || format!("P^{n} rendered {rp}, expected {expected}"))?;
        let zp = zeta_from_polynomial(&pn);
        let want = ZetaF1::from_exponents((0..=n).map(|k| (k, BigInt::from(1))));
        ensure(zp == want, || format!("P^{n}: {zp:?}"))?;
    }
    Ok("A^n, P^n for n ≤ 4".into())
}

fn c9_tree_zeta() -> Outcome {
    let mut rng = corpus::rng(SEED + 9);
    for _ in 0..100 {
        let t = random_loose_tree(&mut rng, 8, 4);
        let degrees = common::degrees(&t);
        let ends = degrees.values().filter(|&&d| d == 1).count() as i64;
        let high: Vec<usize> = degrees.values().copied().filter(|&d| d > 1).collect();
        let internal = high.len() as i64 - 1;
        // (t−1)^I · t^(−(E+I)) · ∏ (t−k)^(−n_k)
        let mut exps: std::collections::BTreeMap<usize, i64> = Default::default();
        *exps.entry(0).or_default() += ends + internal;
        *exps.entry(1).or_default() -= internal;
        for d in high {
            *exps.entry(d).or_default() += 1;
        }
        let want = ZetaF1::from_exponents(exps.into_iter().map(|(k, a)| (k, BigInt::from(a))));
        let got = zeta_from_polynomial(&tree_class(&t).map_err(|e| e.to_string())?);
        ensure(got == want, || format!("{}: {} vs {}", t.render(), got.render(), want.render()))?;
    }
    Ok("100 random loose trees".into())
}

fn c10_limit() -> Outcome {
    let cases = [("P^1", complete(2)), ("A^1", affine_star(1)), ("P^2", complete(3))];
    let mut notes = Vec::new();
    for (name, g) in cases {
        let z = zeta_from_polynomial(&class_of(&g));
        let target = z.value(3.0).map_err(|e| e.to_string())?;
        let near = (limit_check(&z, 3.0, 1.0001).map_err(|e| e.to_string())? - target).abs();
        let far = (limit_check(&z, 3.0, 1.0002).map_err(|e| e.to_string())? - target).abs();
        ensure(near < 1e-3, || format!("{name}: error {near:e} at p = 1.0001"))?;
        ensure(far >= 1.9 * near, || format!("{name}: ratio {:.3}", far / near))?;
        notes.push(format!("{name} ratio {:.3}", far / near));
    }
    let p1 = zeta_from_polynomial(&class_of(&complete(2))).value(3.0).map_err(|e| e.to_string())?;
    ensure((p1 - 1.0 / 6.0).abs() < 1e-12, || format!("P^1 limit value {p1}"))?;
    Ok(notes.join(", "))
}

fn c11_qanalog() -> Outcome {
    let g42 = gauss_binomial(4, 2).map_err(|e| e.to_string())?;
    let at2 = g42.eval_i64(2);
    let brute = common::subspace_count(4, 2, 2);
    ensure(at2 == BigInt::from(35) && brute == 35, || format!("[4 2]_2 = {at2}, brute force {brute}"))?;
    for n in 0..=10usize {
        for k in 0..=n {
            let v = gauss_binomial(n, k).map_err(|e| e.to_string())?.eval_i64(1);
            ensure(v == binomial(n as u64, k as u64), || format!("[{n} {k}] at q=1 gave {v}"))?;
        }
    }
    Ok("[4 2]_2 = 35; q=1 for n ≤ 10".into())
}

fn c12_monomial_groups() -> Outcome {
    for (d, n) in [(2usize, 2u32), (2, 3), (3, 2), (2, 1), (3, 1)] {
        let all = MonomialMatrix::enumerate(d, n);
        let order = gl_order(d as u32, n).to_usize().expect("small");
        ensure(all.len() == order, || format!("({d},{n}): {} elements, expected {order}", all.len()))?;
        let dense: std::collections::HashSet<_> = all.iter().map(MonomialMatrix::to_dense).collect();
        ensure(dense.len() == order, || format!("({d},{n}): duplicates"))?;
        ensure(dense == common::monomial_group_closure(d, n), || {
            format!("({d},{n}): differs from generated group")
        })?;
        for a in &all {
            for b in &all {
                let ab = a.compose(b).map_err(|e| e.to_string())?;
                ensure(dense.contains(&ab.to_dense()), || format!("({d},{n}): not closed"))?;
            }
        }
        if n == 1 {
            let perms: std::collections::BTreeSet<Vec<usize>> = all.iter().map(|m| m.permutation().to_vec()).collect();
            ensure(perms == permutations(d).into_iter().collect(), || format!("S_{d} mismatch"))?;
            ensure(all.iter().all(|m| m.weights().iter().all(|&w| w == 0)), || "nontrivial weight".into())?;
        }
    }
    Ok("(2,2), (2,3), (3,2) and n = 1".into())
}

fn c13_monoids() -> Outcome {
    for n in 1..=4 {
        let m = MonoidPresentation::free(n);
        let primes = spec(&m, DEFAULT_BOUND).map_err(|e| e.to_string())?;
        ensure(primes.len() == 1 << n, || format!("free({n}) has {} primes", primes.len()))?;
    }
    let torus = MonoidPresentation::torus();
    let tp = spec(&torus, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    ensure(tp.len() == 1 && tp[0].is_zero_ideal(), || format!("torus spec {tp:?}"))?;
    for q in [2u64, 3, 5, 7] {
        for n in 1..=3usize {
            let m = MonoidPresentation::free(n);
            let h = hom_count(&m, q).map_err(|e| e.to_string())?;
            ensure(h == q.pow(n as u32), || format!("free({n}) over F_{q}: {h}"))?;
        }
        let h = hom_count(&torus, q).map_err(|e| e.to_string())?;
        ensure(h == q - 1 && h == common::brute_hom_count(&torus, q), || format!("torus over F_{q}: {h}"))?;
        for m in [MonoidPresentation::free(2), torus.clone(), MonoidPresentation::parse("gens x y; rel x*y = x;").unwrap()] {
            let local = localize(&m, &maximal_ideal(&m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let (a, b) = (hom_count(&m, q).map_err(|e| e.to_string())?, hom_count(&local, q).map_err(|e| e.to_string())?);
            ensure(a == b, || format!("{m} over F_{q}: {a} vs localized {b}"))?;
        }
    }
    Ok("spec sizes, hom counts, localization".into())
}

fn c14_vertex_count(graphs: &[LooseGraph]) -> Outcome {
    for g in graphs {
        let c = class_of(g);
        let v = BigInt::from(g.vertex_count());
        ensure(c.eval_i64(1) == v, || format!("{}: N(1) = {}", g.render(), c.eval_i64(1)))?;
        ensure(euler_characteristic(&c) == v, || format!("{}: χ mismatch", g.render()))?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn main() {
    let graphs = oracle_corpus();
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("Γ(u,v;2) and its resolution", secs(1), Box::new(c1_gamma)),
        ("complete graphs and affine stars", secs(1), Box::new(c2_complete_and_affine)),
        ("tree formula", secs(30), Box::new(c3_trees)),
        ("oracle equivalence", secs(300), Box::new(|| c4_oracle(&graphs))),
        ("surgery and order independence", secs(120), Box::new(|| c5_surgery(&graphs))),
        ("affection principle", secs(300), Box::new(|| c6_affection(&graphs))),
        ("Kurokawa series equality", secs(5), Box::new(c7_kurokawa)),
        ("affine and projective zeta", secs(5), Box::new(c8_zeta_examples)),
        ("tree zeta", secs(30), Box::new(c9_tree_zeta)),
        ("p → 1 limit", secs(5), Box::new(c10_limit)),
        ("q-analogs", secs(30), Box::new(c11_qanalog)),
        ("monomial matrix groups", secs(30), Box::new(c12_monomial_groups)),
        ("monoid layer", secs(60), Box::new(c13_monoids)),
        ("vertex-count invariant", secs(60), Box::new(|| c14_vertex_count(&graphs))),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} criterion {:>2} {name}: {detail} ({elapsed:.2?})", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
