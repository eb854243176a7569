//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time limit.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use finring::analysis::{self, Budget};
use finring::enumeration::{enumerate_unital_rings, EnumerateOptions, SearchOrder};
use finring::expr::{parse_ring_expr, RingExpr};
use finring::ring::boolean_power;
use finring::theorems::{brute_force_gl_count, column_class_sizes};
use finring::{Ring, TableRing};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn ring(text: &str) -> Result<Ring, String> {
    parse_ring_expr(text).map_err(e)?.build().map_err(e)
}

fn count_and_sum(r: &Ring) -> Result<(usize, usize), String> {
    analysis::unit_count_and_sum(r, &Budget::default()).map_err(e)
}

fn enumerated(order: usize, up_to_iso: bool, search_order: SearchOrder) -> Result<Vec<TableRing>, String> {
    let opts = EnumerateOptions { up_to_iso, jobs: 4, search_order, ..Default::default() };
    Ok(enumerate_unital_rings(order, &opts).map_err(e)?.rings)
}

fn c1_field_unit_sums() -> Outcome {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
        let f = Ring::gf(q).map_err(e)?;
        let (count, sum) = count_and_sum(&f)?;
        let want_sum = if q == 2 { f.one_idx() } else { 0 };
        ensure(count as u64 == q - 1 && sum == want_sum, || {
            format!("GF({q}): {count} units, sum {}", f.pretty_idx(sum))
        })?;
    }
    Ok(())
}

fn c2_gl_formula() -> Outcome {
    for ((n, q), want) in [((1, 5), 4u64), ((2, 2), 6), ((2, 3), 48), ((2, 4), 180), ((3, 2), 168)] {
        let formula = analysis::gl_order(n, q).map_err(e)?;
        let brute = brute_force_gl_count(n as usize, &Ring::gf(q).map_err(e)?).map_err(e)?;
        ensure(formula == want.into() && brute == want, || {
            format!("GL_{n}(F_{q}): formula {formula}, brute force {brute}, expected {want}")
        })?;
    }
    Ok(())
}

fn c3_matrix_unit_sums() -> Outcome {
    for text in ["M(2, GF(2))", "M(3, GF(2))", "M(2, GF(4))"] {
        let r = ring(text)?;
        let (count, sum) = count_and_sum(&r)?;
        ensure(count % 2 == 0 && sum == 0, || format!("{text}: {count} units, sum {}", r.pretty_idx(sum)))?;
    }
    for text in ["M(2, GF(2))", "M(2, GF(4))"] {
        let sizes = column_class_sizes(&ring(text)?, 0).map_err(e)?;
        ensure(sizes.iter().all(|s| s % 2 == 0), || format!("{text}: first-column classes {sizes:?}"))?;
    }
    Ok(())
}

fn c4_triangular() -> Outcome {
    let r = ring("UT(2, Z(2))")?;
    let units = analysis::unit_group(&r).map_err(e)?;
    let shown: BTreeSet<String> = units.units.iter().map(|u| r.pretty_idx(u.index())).collect();
    let want: BTreeSet<String> = ["[[1,0],[0,1]]", "[[1,1],[0,1]]"].iter().map(|s| s.to_string()).collect();
    ensure(shown == want, || format!("UT_2(Z_2) units {shown:?}"))?;
    let sum = r.pretty_idx(units.sum.index());
    ensure(sum == "[[0,1],[0,0]]", || format!("UT_2(Z_2) unit sum {sum}"))?;
    for (n, want) in [(3, 8usize), (4, 64)] {
        let r = ring(&format!("UT({n}, Z(2))"))?;
        let (count, sum) = count_and_sum(&r)?;
        ensure(count == want && sum == 0, || format!("UT_{n}(Z_2): {count} units, sum {}", r.pretty_idx(sum)))?;
    }
    Ok(())
}

fn c5_main_theorem() -> Outcome {
    let mut trivial_seen = 0;
    for order in 2..=8 {
        for up_to_iso in [false, true] {
            for t in enumerated(order, up_to_iso, SearchOrder::Forward)? {
                let r = Ring::from_table(&t).map_err(e)?;
                let (count, _) = count_and_sum(&r)?;
                if count != 1 {
                    continue;
                }
                trivial_seen += 1;
                let radical = analysis::jacobson_radical(&r).map_err(e)?;
                ensure(
                    analysis::is_boolean(&r)
                        && analysis::characteristic(&r) == 2
                        && analysis::is_commutative(&r)
                        && radical.is_zero,
                    || format!("order {order} ring with one unit fails:\n{}", t.to_text()),
                )?;
            }
        }
    }
    ensure(trivial_seen > 0, || "no ring with a single unit was found".into())
}

fn signature(t: &TableRing) -> Result<(u64, usize, bool), String> {
    let r = Ring::from_table(t).map_err(e)?;
    Ok((analysis::characteristic(&r), count_and_sum(&r)?.0, analysis::is_boolean(&r)))
}

fn c6_enumeration_sanity() -> Outcome {
    let classes = enumerated(4, true, SearchOrder::Forward)?;
    let sigs = classes.iter().map(signature).collect::<Result<BTreeSet<_>, _>>()?;
    let want: BTreeSet<_> = [(4, 2, false), (2, 2, false), (2, 1, true), (2, 3, false)].into();
    ensure(classes.len() == 4 && sigs == want, || format!("{} classes, signatures {sigs:?}", classes.len()))?;
    for order in 1..=8 {
        for up_to_iso in [false, true] {
            let fwd = enumerated(order, up_to_iso, SearchOrder::Forward)?;
            let mut rev = enumerated(order, up_to_iso, SearchOrder::Reversed)?;
            let mut fwd_sorted = fwd.clone();
            fwd_sorted.sort_by(|a, b| (&a.mul, &a.add).cmp(&(&b.mul, &b.add)));
            rev.sort_by(|a, b| (&a.mul, &a.add).cmp(&(&b.mul, &b.add)));
            ensure(fwd_sorted == rev, || format!("order {order}: search orders disagree"))?;
        }
    }
    Ok(())
}

fn radical_strings(r: &Ring) -> Result<BTreeSet<String>, String> {
    let j = analysis::jacobson_radical(r).map_err(e)?;
    Ok(j.members.iter().map(|m| r.pretty_idx(m.index())).collect())
}

fn c7_radical() -> Outcome {
    let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    let pinned = [
        ("Z(4)", set(&["0", "2"])),
        ("Z(6)", set(&["0"])),
        ("UT(2, Z(2))", set(&["[[0,0],[0,0]]", "[[0,1],[0,0]]"])),
    ];
    for (text, want) in pinned {
        let got = radical_strings(&ring(text)?)?;
        ensure(got == want, || format!("J({text}) = {got:?}"))?;
    }
    for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
        let got = radical_strings(&Ring::gf(q).map_err(e)?)?;
        ensure(got == set(&["0"]), || format!("J(GF({q})) = {got:?}"))?;
    }
    let mut pool = Vec::new();
    for text in ["UT(2, Z(2))", "UT(3, Z(2))", "UT(2, GF(4))", "M(2, GF(2))", "M(2, Z(4))", "Z(4) x Z(2)", "B(4)"] {
        pool.push(ring(text)?);
    }
    for n in 2..=30 {
        pool.push(Ring::zn(n).map_err(e)?);
    }
    for order in 2..=8 {
        for t in enumerated(order, true, SearchOrder::Forward)? {
            pool.push(Ring::from_table(&t).map_err(e)?);
        }
    }
    for r in &pool {
        let quotient = analysis::semisimple_quotient(r).map_err(e)?;
        ensure(analysis::is_semisimple(&quotient).map_err(e)?, || format!("J(R/J(R)) != 0 for {}", r.label()))?;
    }
    Ok(())
}

fn no_self_negative_unit_pairing(r: &Ring) -> Outcome {
    let (count, sum) = count_and_sum(r)?;
    ensure(count % 2 == 0 && sum == 0, || format!("{}: {count} units, sum {}", r.label(), r.pretty_idx(sum)))?;
    let mut self_negative = None;
    analysis::for_each_unit(r, &Budget::default(), &mut |u| {
        if r.neg_idx(u) == u && self_negative.is_none() {
            self_negative = Some(u);
        }
    })
    .map_err(e)?;
    ensure(self_negative.is_none(), || format!("{}: unit {:?} equals its negative", r.label(), self_negative))
}

fn c8_negation_pairing() -> Outcome {
    for n in 3..=30 {
        no_self_negative_unit_pairing(&Ring::zn(n).map_err(e)?)?;
    }
    for order in 2..=8 {
        for up_to_iso in [false, true] {
            for t in enumerated(order, up_to_iso, SearchOrder::Forward)? {
                let r = Ring::from_table(&t).map_err(e)?;
                if analysis::characteristic(&r) != 2 {
                    no_self_negative_unit_pairing(&r)?;
                }
            }
        }
    }
    Ok(())
}

fn c9_boolean_family() -> Outcome {
    for k in 1..=6 {
        let r = boolean_power(k).map_err(e)?;
        let (count, _) = count_and_sum(&r)?;
        ensure(
            analysis::is_boolean(&r) && analysis::characteristic(&r) == 2 && analysis::is_commutative(&r) && count == 1,
            || format!("Z_2^{k} fails"),
        )?;
    }
    Ok(())
}

fn arb_expr(depth: u32) -> impl Strategy<Value = RingExpr> {
    let leaf = prop_oneof![
        (1u64..100).prop_map(RingExpr::Zn),
        (1u64..100).prop_map(RingExpr::Gf),
        (1u64..10).prop_map(RingExpr::Boolean),
    ];
    leaf.prop_recursive(depth, 64, 4, |inner| {
        prop_oneof![
            (1u64..6, inner.clone()).prop_map(|(n, e)| RingExpr::Matrix(n, Box::new(e))),
            (1u64..6, inner.clone()).prop_map(|(n, e)| RingExpr::Triangular(n, Box::new(e))),
            prop::collection::vec(inner, 1..5).prop_map(RingExpr::Prod),
        ]
    })
}

fn c10_parser() -> Outcome {
    let good = [
        ("Z(4)", RingExpr::Zn(4)),
        ("GF(9)", RingExpr::Gf(9)),
        ("B(3)", RingExpr::Boolean(3)),
        ("M(2, GF(4))", RingExpr::Matrix(2, Box::new(RingExpr::Gf(4)))),
        ("UT(3,Z(2))", RingExpr::Triangular(3, Box::new(RingExpr::Zn(2)))),
        ("Z(2) x Z(3)", RingExpr::Prod(vec![RingExpr::Zn(2), RingExpr::Zn(3)])),
        ("Prod(Z(2), GF(4))", RingExpr::Prod(vec![RingExpr::Zn(2), RingExpr::Gf(4)])),
        ("(Z(5))", RingExpr::Zn(5)),
    ];
    for (text, want) in good {
        let got = parse_ring_expr(text).map_err(|err| format!("{text}: {err}"))?;
        ensure(got == want, || format!("{text} parsed as {got:?}"))?;
    }
    for (text, column) in [("M(2 GF(4))", 5), ("Z(0)", 3), ("z(2)", 1), ("Z(2) Z(3)", 6), ("Prod(Z(2)", 10), ("", 1)] {
        match parse_ring_expr(text) {
            Ok(x) => return Err(format!("{text:?} parsed as {x:?}")),
            Err(err) => ensure(err.column == column, || format!("{text:?}: {err}"))?,
        }
    }
    let built = parse_ring_expr("GF(6)").map_err(e)?.build();
    ensure(built.is_err(), || "GF(6) constructed".into())?;

    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&arb_expr(4), |x| {
            prop_assert_eq!(parse_ring_expr(&x.to_string()).unwrap(), x);
            Ok(())
        })
        .map_err(e)
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("field unit sums", Duration::from_secs(1), c1_field_unit_sums),
        ("GL order formula vs brute force", Duration::from_secs(5), c2_gl_formula),
        ("matrix unit sums in characteristic 2", Duration::from_secs(30), c3_matrix_unit_sums),
        ("upper triangular family over Z_2", Duration::from_secs(10), c4_triangular),
        ("trivial unit group implies boolean, order <= 8", Duration::from_secs(600), c5_main_theorem),
        ("order 4 classes and dual search orders", Duration::from_secs(600), c6_enumeration_sanity),
        ("Jacobson radical", Duration::from_secs(10), c7_radical),
        ("unit negation pairing", Duration::from_secs(30), c8_negation_pairing),
        ("boolean family", Duration::from_secs(1), c9_boolean_family),
        ("ring expression parser", Duration::from_secs(600), c10_parser),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= *limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
