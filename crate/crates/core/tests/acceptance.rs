//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Built with `harness = false` so the report is always printed.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumsetdim_core::block::Side;
use sumsetdim_core::dimension::{moran_residual, OscVerdict};
use sumsetdim_core::oracle::{
    box_count_dimension, brute_force_matchings, default_scale_range, sample_attractor,
    sumset_cloud, DEFAULT_POINT_CAP,
};
use sumsetdim_core::{
    classify_structure, dimension, finiteness, is_multiplier_set, matchings_up_to, moran_root,
    osc_interval_check, osc_sufficient_check, primitive_length_bound, reduced_lengths, Base, Block,
    DimensionKind, DimensionOptions, Finiteness, LengthMultiset, MatchingEnumerator, Rational,
    StructureClass, DEFAULT_CANDIDATE_CAP,
};

use common::*;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64, what: &str) -> Result<(), String> {
    check(elapsed.as_secs_f64() < limit, || {
        format!(
            "{what} took {:.2} s, limit {limit} s",
            elapsed.as_secs_f64()
        )
    })
}

fn block_set(v: &[&[i64]]) -> BTreeSet<Block> {
    blocks(v).into_iter().collect()
}

fn show(set: &BTreeSet<Block>) -> String {
    let parts: Vec<String> = set.iter().map(ToString::to_string).collect();
    parts.join(" ")
}

fn golden(
    d1: &[&[i64]],
    d2: &[&[i64]],
    lmax: usize,
    expected: &BTreeSet<Block>,
) -> Result<(), String> {
    let five = Base::integer(5).unwrap();
    let a = ifs_of_blocks(&five, d1).digital_set(Side::First);
    let b = ifs_of_blocks(&five, d2).digital_set(Side::Second);
    let start = Instant::now();
    let got: BTreeSet<Block> = matchings_up_to(&a, &b, lmax, DEFAULT_CANDIDATE_CAP)
        .map_err(|e| e.to_string())?
        .iter()
        .cloned()
        .collect();
    within(start.elapsed(), 1.0, "enumeration")?;
    check(&got == expected, || {
        format!(
            "L_max={lmax}: got {} expected {}",
            show(&got),
            show(expected)
        )
    })
}

fn criterion_1() -> Outcome {
    let d = [&[0][..], &[2, 2]];
    let six = block_set(&[
        &[0],
        &[2, 2],
        &[4, 4],
        &[2, 4, 2],
        &[2, 4, 4, 2],
        &[2, 4, 4, 4, 2],
    ]);
    golden(&d, &d, 5, &six)?;
    let mut seven = six.clone();
    seven.insert(Block::from_integers(&[2, 4, 4, 4, 4, 2]).unwrap());
    golden(&d, &d, 6, &seven)?;

    let e = [&[0][..], &[2]];
    let f = [&[0][..], &[2, 2]];
    golden(
        &e,
        &f,
        4,
        &block_set(&[&[0], &[2], &[2, 4], &[4, 2], &[4, 4]]),
    )?;

    let g1 = [&[2, 3][..], &[3, 4]];
    let g2 = [&[3, 2][..], &[1, 5]];
    let pairs = block_set(&[&[5, 5], &[3, 8], &[6, 6], &[4, 9]]);
    for lmax in 2..=4 {
        golden(&g1, &g2, lmax, &pairs)?;
    }
    Ok("three lists exact; at L_max=6 the (0),(22) list also holds (244442)".into())
}

fn criterion_2() -> Outcome {
    let three = Base::integer(3).unwrap();
    let k = ifs_of_blocks(&three, &[&[0], &[2, 2]]);
    let start = Instant::now();
    let r = dimension(&k, &k, &DimensionOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, 10.0, "dimension")?;
    let exact = cubic_example_dimension();
    check(r.kind == DimensionKind::Interval, || {
        format!("kind {}", r.kind)
    })?;
    let (lo, hi) = (r.lo.unwrap(), r.hi.unwrap());
    check(hi - lo <= 1e-3, || format!("width {}", hi - lo))?;
    check(lo <= exact && exact <= hi, || {
        format!("[{lo}, {hi}] misses {exact}")
    })?;
    Ok(format!(
        "[{lo:.13}, {hi:.13}] ∋ {exact:.13}, L_max={}, {:.2} s",
        r.lmax.unwrap(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_3() -> Outcome {
    let mut seen = Vec::new();
    for beta in [3, 5] {
        let base = Base::integer(beta).unwrap();
        let b = |n: i64| q(1, 1) * Rational::from_integer(n.into()) / base.beta();
        let b2 = |n: i64| b(n) / base.beta();
        let ifs1 = ifs_of_maps(&base, &[(1, q(0, 1)), (1, b(2))]);
        // g₂(x) = x/β² + 2/β + 2/β², written as the block (2,2)
        let ifs2 = ifs_of_blocks(&base, &[&[0], &[2, 2]]);
        let start = Instant::now();
        let class =
            classify_structure(&ifs1, &ifs2, DEFAULT_CANDIDATE_CAP).map_err(|e| e.to_string())?;
        within(start.elapsed(), 1.0, "classification")?;
        let StructureClass::SelfSimilar { matchings, .. } = class else {
            return Err(format!("β={beta}: not self-similar"));
        };
        let got: BTreeSet<(u32, Rational)> = matchings
            .similitudes(&base)
            .into_iter()
            .map(|s| (s.exponent(), s.translation().clone()))
            .collect();
        let expected: BTreeSet<(u32, Rational)> = [
            (1, q(0, 1)),
            (1, b(2)),
            (2, b(2) + b2(4)),
            (2, b(4) + b2(2)),
            (2, b(4) + b2(4)),
        ]
        .into_iter()
        .collect();
        check(got.len() == 5 && got == expected, || {
            format!("β={beta}: got {got:?}")
        })?;
        seen.push(beta);
    }
    Ok(format!("the five expected maps at β ∈ {seen:?}"))
}

/// Cross-checks a length verdict against enumeration; `Err` describes a
/// disagreement.
fn verdict_agrees(inst: &Instance) -> Result<Finiteness, String> {
    let (l1, l2) = reduced_lengths(&inst.d1, &inst.d2);
    let (d1, d2) = (inst.d1.reduced(), inst.d2.reduced());
    let mut en = MatchingEnumerator::new(&d1, &d2, DEFAULT_CANDIDATE_CAP);
    let describe_pair = || format!("{} | {}", describe(&inst.d1), describe(&inst.d2));
    match finiteness(&l1, &l2) {
        Finiteness::Finite => {
            let bound = primitive_length_bound(&l1, &l2).map_err(|e| e.to_string())?;
            en.extend_to(2 * bound).map_err(|e| e.to_string())?;
            let late = en.matching_set().max_length().is_some_and(|m| m > bound);
            check(!late, || {
                format!("{}: Matching beyond L*={bound}", describe_pair())
            })?;
            Ok(Finiteness::Finite)
        }
        Finiteness::Infinite => {
            while en.cutoff() < 24 {
                en.extend_one().map_err(|e| e.to_string())?;
                if en.matching_set().max_length().is_some_and(|m| m > 8) {
                    return Ok(Finiteness::Infinite);
                }
            }
            Err(format!(
                "{}: nothing longer than 8 by L=24",
                describe_pair()
            ))
        }
    }
}

fn criterion_4(family: &[Instance]) -> Outcome {
    let mut finite = 0;
    let mut bad = Vec::new();
    for inst in family {
        match verdict_agrees(inst) {
            Ok(Finiteness::Finite) => finite += 1,
            Ok(Finiteness::Infinite) => {}
            Err(e) => bad.push(e),
        }
    }
    check(bad.is_empty(), || bad.join("; "))?;
    Ok(format!(
        "{} instances, {finite} Finite, {} Infinite, 0 disagreements",
        family.len(),
        family.len() - finite
    ))
}

fn multisets(max_elem: usize, max_size: usize) -> Vec<Vec<usize>> {
    fn go(
        from: usize,
        max_elem: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for e in from..=max_elem {
            cur.push(e);
            go(e, max_elem, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, max_elem, max_size, &mut Vec::new(), &mut out);
    out
}

/// Direct sweep: some `t ≤ k` with every `t`-fold sum divisible by `k`.
fn sweep(l: &[usize], k: usize) -> bool {
    (1..=k).any(|t| {
        let mut sums: BTreeSet<usize> = [0].into();
        for _ in 0..t {
            sums = sums
                .iter()
                .flat_map(|s| l.iter().map(move |x| s + x))
                .collect();
        }
        sums.iter().all(|s| s % k == 0)
    })
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let sets = multisets(8, 4);
    let mut cases = 0;
    for l in &sets {
        let lm = LengthMultiset::new(l.clone()).unwrap();
        for k in 1..=6 {
            cases += 1;
            check(is_multiplier_set(&lm, k) == sweep(l, k), || {
                format!("{l:?}, k={k}")
            })?;
        }
    }
    within(start.elapsed(), 1.0, "sweep")?;
    let l = LengthMultiset::new(vec![6, 10]).unwrap();
    check(is_multiplier_set(&l, 4), || "({6,10}, 4) rejected".into())?;
    let witness = sumsetdim_core::classify::multiplier_witness(&l, 4);
    check(witness == Some(2), || format!("witness {witness:?}"))?;
    let iterate = sumsetdim_core::classify::iterate_lengths(&l, 2);
    check(iterate == vec![12, 16, 16, 20], || {
        format!("iterate {iterate:?}")
    })?;
    Ok(format!(
        "{cases} (multiset, k) cases agree; ({{6,10}}, 4) true via {{12,16,16,20}}"
    ))
}

fn criterion_6() -> Outcome {
    let seven = Base::integer(7).unwrap();
    let i1 = ifs_of_blocks(&seven, &[&[2, 3], &[3, 4]]);
    let i2 = ifs_of_blocks(&seven, &[&[3, 2], &[1, 5]]);
    let class = classify_structure(&i1, &i2, DEFAULT_CANDIDATE_CAP).map_err(|e| e.to_string())?;
    let StructureClass::SelfSimilar { matchings, .. } = class else {
        return Err("not self-similar".into());
    };
    let (d1, d2) = (i1.digital_set(Side::First), i2.digital_set(Side::Second));
    let r = osc_sufficient_check(&d1, &d2, &i1.hull(), &i2.hull(), &matchings, &seven);
    check(
        r.a == q(4, 1) && r.b == q(5, 1) && r.c == Some(q(1, 1)),
        || format!("A={} B={} c={:?}", r.a, r.b, r.c),
    )?;
    // independent recomputation from the hull endpoints
    let lhs = q(4, 1) + q(5, 1) + i1.hull().width() + i2.hull().width();
    let rhs = q(1, 1) * (seven.beta() - q(1, 1));
    let holds = lhs < rhs;
    check(r.lhs == lhs && r.rhs.as_ref() == Some(&rhs), || {
        "lhs/rhs differ".into()
    })?;
    check((r.verdict == OscVerdict::Satisfied) == holds, || {
        format!("verdict {:?}", r.verdict)
    })?;
    let dim = dimension(&i1, &i2, &DimensionOptions::default()).map_err(|e| e.to_string())?;
    let pairwise = osc_interval_check(
        &matchings.similitudes(&seven),
        &i1.hull().sum(&i2.hull()),
        &seven,
    );
    Ok(format!(
        "A=4 B=5 c=1; {lhs} < {rhs} is {holds}; fired branch: {} (pairwise check {pairwise}), {} {:.10}",
        dim.osc_method,
        dim.kind,
        dim.value.unwrap_or(f64::NAN)
    ))
}

fn criterion_7(family: &[Instance]) -> Outcome {
    let mut mismatches = Vec::new();
    let mut total = 0;
    for inst in family {
        let brute = brute_force_matchings(&inst.d1, &inst.d2, BRUTE_LENGTH);
        let engine: BTreeSet<Block> =
            matchings_up_to(&inst.d1, &inst.d2, BRUTE_LENGTH, DEFAULT_CANDIDATE_CAP)
                .map_err(|e| e.to_string())?
                .iter()
                .cloned()
                .collect();
        total += engine.len();
        if brute != engine {
            mismatches.push(format!("{} | {}", describe(&inst.d1), describe(&inst.d2)));
        }
    }
    check(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok(format!(
        "{} instances, {total} Matchings up to L={BRUTE_LENGTH}, 0 mismatches",
        family.len()
    ))
}

fn criterion_8() -> Outcome {
    let three = Base::integer(3).unwrap();
    let cantor = ifs_of_maps(&three, &[(1, q(0, 1)), (1, q(2, 3))]);
    let cloud = sample_attractor(&cantor, 10, DEFAULT_POINT_CAP).map_err(|e| e.to_string())?;
    let est = box_count_dimension(&cloud, 3.0, default_scale_range(&cloud, 3.0))
        .map_err(|e| e.to_string())?;
    let target = 2f64.ln() / 3f64.ln();
    check((est.dimension - target).abs() <= 0.05, || {
        format!("middle thirds {:.4} vs {target:.4}", est.dimension)
    })?;

    let k = ifs_of_blocks(&three, &[&[0], &[2, 2]]);
    let kc = sample_attractor(&k, 10, DEFAULT_POINT_CAP).map_err(|e| e.to_string())?;
    let sum = sumset_cloud(&kc, &kc, DEFAULT_POINT_CAP).map_err(|e| e.to_string())?;
    let sum_est = box_count_dimension(&sum, 3.0, (3f64.powi(-7), 3f64.powi(-3)))
        .map_err(|e| e.to_string())?;
    let r = dimension(&k, &k, &DimensionOptions::default()).map_err(|e| e.to_string())?;
    let mid = 0.5 * (r.lo.unwrap() + r.hi.unwrap());
    check((sum_est.dimension - mid).abs() <= 0.05, || {
        format!("sumset {:.4} vs {mid:.4}", sum_est.dimension)
    })?;
    Ok(format!(
        "middle thirds {:.4} (target {target:.4}); sumset {:.4} (midpoint {mid:.4})",
        est.dimension, sum_est.dimension
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED ^ 9);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let beta = rng.gen_range(2..=9);
        let n = rng.gen_range(1..=5);
        let lengths: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let base = Base::integer(beta).unwrap();
        let s = moran_root(&lengths, &base).map_err(|e| e.to_string())?;
        let residual = moran_residual(&lengths, &base, s).abs();
        check(residual < 1e-12, || {
            format!("{lengths:?} β={beta}: residual {residual:e}")
        })?;
        for q in [2, 3] {
            let scaled: Vec<usize> = lengths.iter().map(|l| q * l).collect();
            let sq = moran_root(&scaled, &base).map_err(|e| e.to_string())?;
            let gap = (sq - s / q as f64).abs();
            worst = worst.max(gap);
            check(gap < 1e-12, || {
                format!("{lengths:?} β={beta} q={q}: {gap:e}")
            })?;
        }
        let squared = Base::integer(beta * beta).unwrap();
        let doubled: Vec<usize> = lengths.iter().map(|l| 2 * l).collect();
        let a = moran_root(&doubled, &base).map_err(|e| e.to_string())?;
        let b = moran_root(&lengths, &squared).map_err(|e| e.to_string())?;
        worst = worst.max((a - b).abs());
        check((a - b).abs() < 1e-12, || {
            format!("{lengths:?} β={beta}: β² gap {:e}", (a - b).abs())
        })?;
    }
    Ok(format!("20 instances, largest identity gap {worst:.1e}"))
}

fn main() -> ExitCode {
    let family = random_family();
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(criterion_3)),
        (4, Box::new(|| criterion_4(&family))),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(|| criterion_7(&family))),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (n, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.2} s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.2} s) {detail}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
