//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are implemented as stated and
//! reported as FAIL; the process exits nonzero only if the set of failing
//! criteria differs from that list.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use patchwork_lab_core::census::{constant_a, dt_limit, dt_upper_bound, prop1_lower_bound};
use patchwork_lab_core::haas::{haas_family, haas_k, matches_haas_pattern, nest_depth, run_haas};
use patchwork_lab_core::partitions::{enumerate_partitions, partition_counts, star_family_scheme, Partition};
use patchwork_lab_core::patchwork::{
    build_patchwork_certified, certify_convexity, count_rect_triangulations, enumerate_newton_triangulations,
    extract_scheme, random_convex_primitive_triangulation, SignDistribution, Triangulation, MAX_RECT_CELLS,
};
use patchwork_lab_core::scheme::{condition_star_check, enumerate_admissible_schemes, harnack_bound};
use patchwork_lab_core::trees::{
    branch_cut_decode, branch_cut_encode, count_rooted_trees, enumerate_rooted_trees, estimate_otter_constant,
    lemma9_bound_check, LabeledTree, TreeCountTable,
};
use patchwork_lab_core::RealScheme;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot hold as stated, with the reason.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[
    (1, "a primitive T-curve meets each coordinate axis in d real points, so the empty scheme never occurs"),
    (3, "same obstruction: the empty scheme \"0\" is not realized at d = 4"),
    (5, "the nested pattern a u 1<a_0 u S_0 u ... 1<1>...> itself has depth k + 2"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn schemes_of_exhaustion(d: u32) -> BTreeMap<String, u64> {
    let mut found = BTreeMap::new();
    for t in enumerate_newton_triangulations(d).unwrap() {
        let Ok(cert) = certify_convexity(&t) else { continue };
        let n = t.vertices.len();
        for bits in 0..(1u64 << n) {
            let s = SignDistribution::from_bits(n, bits);
            let curve = build_patchwork_certified(&t, &s, &cert).unwrap();
            *found.entry(extract_scheme(&curve).unwrap().to_string()).or_insert(0) += 1;
        }
    }
    found
}

fn set_of(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let found = schemes_of_exhaustion(2);
    let realized: BTreeSet<String> = found.keys().cloned().collect();
    let fast = start.elapsed() < Duration::from_secs(60);
    let pass = realized == set_of(&["0", "1"]) && fast;
    outcome(pass, format!("realized {found:?}, expected {{\"0\", \"1\"}}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let found = schemes_of_exhaustion(3);
    let realized: BTreeSet<String> = found.keys().cloned().collect();
    let fast = start.elapsed() < Duration::from_secs(300);
    let pass = realized == set_of(&["J", "J u 1"]) && fast;
    outcome(pass, format!("realized {found:?}, expected {{\"J\", \"J u 1\"}}"))
}

/// Minus exactly at points with both coordinates even.
fn harnack_signs(t: &Triangulation) -> SignDistribution {
    SignDistribution::from_fn(&t.vertices, |(x, y)| if x % 2 == 0 && y % 2 == 0 { -1 } else { 1 }).unwrap()
}

fn criterion_3() -> Outcome {
    const SEEDS: u64 = 1000;
    const RANDOM_SIGNS: usize = 8;
    let admissible: BTreeSet<RealScheme> = enumerate_admissible_schemes(4, 4).unwrap().into_iter().collect();
    let mut found: BTreeMap<String, u64> = BTreeMap::new();
    let mut outside = BTreeSet::new();
    for seed in 0..SEEDS {
        let t = random_convex_primitive_triangulation(4, seed).unwrap();
        let cert = certify_convexity(&t).unwrap();
        let n = t.vertices.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut signs = vec![SignDistribution::all_plus(n), harnack_signs(&t)];
        signs.extend((0..RANDOM_SIGNS).map(|_| SignDistribution::random(n, &mut rng)));
        for s in signs {
            let scheme = extract_scheme(&build_patchwork_certified(&t, &s, &cert).unwrap()).unwrap();
            if !admissible.contains(&scheme) {
                outside.insert(scheme.to_string());
            }
            *found.entry(scheme.to_string()).or_insert(0) += 1;
        }
    }
    let distinct = found.len();
    let has_empty = found.contains_key("0");
    let has_m = found.keys().any(|s| s.parse::<RealScheme>().unwrap().oval_count() == 4);
    let pass = outside.is_empty() && distinct >= 3 && distinct <= admissible.len() && has_empty && has_m;
    outcome(
        pass,
        format!(
            "{distinct} distinct of {} admissible, outside={outside:?}, has \"0\"={has_empty}, has 4-oval={has_m}, realized {found:?}",
            admissible.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    const PER_DEGREE: u64 = 1250;
    let mut runs = 0u64;
    let mut failures = Vec::new();
    for d in 1..=8u32 {
        let l = harnack_bound(d).unwrap() as usize;
        for seed in 0..PER_DEGREE {
            let t = random_convex_primitive_triangulation(d, seed).unwrap();
            let cert = certify_convexity(&t).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31) + u64::from(d));
            let s = SignDistribution::random(t.vertices.len(), &mut rng);
            let curve = build_patchwork_certified(&t, &s, &cert).unwrap();
            let scheme = extract_scheme(&curve).unwrap();
            runs += 1;
            if !curve.certified || scheme.oval_count() > l || scheme.pseudoline != (d % 2 == 1) {
                failures.push((d, seed, scheme.to_string()));
            }
        }
    }
    outcome(runs >= 10_000 && failures.is_empty(), format!("{runs} runs over d = 1..8, failures {failures:?}"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok_ovals = true;
    let mut ok_pattern = true;
    let mut ok_depth = true;
    let mut ok_distinct = true;
    for d in [12u32, 18, 24] {
        let mut family = haas_family(d).unwrap();
        if d == 24 {
            let mut rng = ChaCha8Rng::seed_from_u64(24);
            family.shuffle(&mut rng);
            family.truncate(50);
        }
        let l = harnack_bound(d).unwrap() as usize;
        let k = haas_k(d).unwrap() as usize;
        let mut schemes = BTreeSet::new();
        let mut depths = BTreeSet::new();
        for lams in &family {
            let run = run_haas(d, lams).unwrap();
            ok_ovals &= run.scheme.oval_count() == l;
            ok_pattern &= matches_haas_pattern(&run.scheme, &run.plan);
            depths.insert(nest_depth(&run.scheme));
            schemes.insert(run.scheme);
        }
        ok_depth &= depths == BTreeSet::from([k + 1]);
        ok_distinct &= schemes.len() == family.len();
        notes.push(format!(
            "d={d}: {} runs, ovals {l}, {} distinct, depths {depths:?} vs k+1={}",
            family.len(),
            schemes.len(),
            k + 1
        ));
    }
    let fast = start.elapsed() < Duration::from_secs(600);
    outcome(
        ok_ovals && ok_pattern && ok_depth && ok_distinct && fast,
        format!(
            "ovals={ok_ovals} pattern={ok_pattern} depth={ok_depth} distinct={ok_distinct}; {}",
            notes.join("; ")
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let brute = (1..=12).all(|n| BigUint::from(enumerate_rooted_trees(n).unwrap().len()) == count_rooted_trees(n));
    let n_max = 30;
    let table = TreeCountTable::new(n_max).with_heights(n_max);
    let mut table_ok = true;
    for n in 2..=n_max {
        table_ok &= table.count_bounded(n, 1) == Some(BigUint::from(1u32));
        table_ok &= table.count_bounded(n, n - 1).as_ref() == table.count(n);
        for h in 1..n - 1 {
            table_ok &= table.count_bounded(n, h) <= table.count_bounded(n, h + 1);
        }
    }
    let ratio = estimate_otter_constant(1000).unwrap();
    let ratio_ok = (ratio - 2.95576).abs() <= 0.01;
    let fast = start.elapsed() < Duration::from_secs(120);
    outcome(
        brute && table_ok && ratio_ok && fast,
        format!("brute force n<=12 {brute}, depth table {table_ok}, T_1001/T_1000 = {ratio:.6}"),
    )
}

fn criterion_7() -> Outcome {
    let mut trees_checked = 0;
    let mut codec_ok = true;
    for n in 1..=10 {
        for tree in enumerate_rooted_trees(n).unwrap() {
            let labeled = LabeledTree::from_node(&tree);
            for h in [2usize, 3] {
                let rec = branch_cut_encode(&labeled, h).unwrap();
                codec_ok &= branch_cut_decode(&rec) == labeled;
                codec_ok &= rec.cut_count() <= n / h;
                codec_ok &= rec.merged().height() <= h && rec.merged().vertex_count() == n + 1;
            }
            trees_checked += 1;
        }
    }
    let mut bound_ok = true;
    let mut instances = 0;
    for n in 2..=14 {
        for h in 2..=n {
            bound_ok &= lemma9_bound_check(n, h).unwrap();
            instances += 1;
        }
    }
    outcome(
        codec_ok && bound_ok,
        format!("codec on {trees_checked} trees x h in {{2,3}}: {codec_ok}; bound on {instances} (n, h): {bound_ok}"),
    )
}

fn criterion_8() -> Outcome {
    let table = partition_counts(40);
    let counts_ok = (0..=40u32).all(|m| BigUint::from(enumerate_partitions(m).len()) == table[m as usize]);
    let d = 6;
    let pool = enumerate_partitions(d);
    let k = (3 * d / 2) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut tuples: BTreeSet<Vec<Partition>> = BTreeSet::new();
    while tuples.len() < 1000 {
        tuples.insert((0..k).map(|_| pool.choose(&mut rng).unwrap().clone()).collect());
    }
    let schemes: Vec<RealScheme> = tuples.iter().map(|t| star_family_scheme(d, t).unwrap()).collect();
    let distinct: BTreeSet<&RealScheme> = schemes.iter().collect();
    let injective = distinct.len() == tuples.len();
    let star_ok = schemes.iter().all(|s| condition_star_check(s, d));
    outcome(
        counts_ok && injective && star_ok,
        format!("p(m) m<=40 {counts_ok}; {} tuples -> {} schemes; condition (*) {star_ok}", tuples.len(), distinct.len()),
    )
}

fn criterion_9() -> Outcome {
    let c6 = prop1_lower_bound(6, &BigUint::from(56u32), 0).unwrap().constant.to_f64();
    let c8 = prop1_lower_bound(8, &BigUint::from(2500u32), 0).unwrap().constant.to_f64();
    let dt = dt_upper_bound(200).unwrap().normalized.to_f64();
    let limit = dt_limit().to_f64();
    let a = constant_a().to_f64();
    let pass = (c6 - 1.02081).abs() <= 1e-4
        && (c8 - 1.03511).abs() <= 1e-4
        && ((dt - limit) / limit).abs() <= 0.05
        && (a - 0.5419).abs() <= 1e-4;
    outcome(pass, format!("C6 = {c6:.6}, C8 = {c8:.6}, dT(200) = {dt:.4} vs {limit:.4}, A = {a:.6}"))
}

fn criterion_10() -> Outcome {
    let mut values = Vec::new();
    let mut below = true;
    for k in 1..=MAX_RECT_CELLS {
        for m in k..=MAX_RECT_CELLS / k {
            let n = count_rect_triangulations(k, m).unwrap();
            let root = n.to_f64().unwrap().powf(1.0 / f64::from(k * m));
            below &= root < 256.0 / 27.0;
            values.push(format!("({k},{m})={n}"));
        }
    }
    let again = [(1, 1), (1, 2), (2, 2)].map(|(k, m)| count_rect_triangulations(k, m).unwrap());
    let fixed = again == [2u32, 6, 64].map(BigUint::from);
    let stable = again == [(1, 1), (1, 2), (2, 2)].map(|(k, m)| count_rect_triangulations(k, m).unwrap());
    outcome(fixed && stable && below, format!("{}; roots below 256/27: {below}", values.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let known: BTreeMap<u32, &str> = KNOWN_UNATTAINABLE.iter().copied().collect();
    let mut failed = BTreeSet::new();
    for (id, f) in criteria {
        let start = Instant::now();
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {id:>2}: {verdict} ({:.1}s) {}", start.elapsed().as_secs_f64(), o.detail);
        if !o.pass {
            failed.insert(id);
            if let Some(reason) = known.get(&id) {
                line.push_str(&format!(" [unattainable: {reason}]"));
            }
        }
        println!("{line}");
    }
    let expected: BTreeSet<u32> = known.keys().copied().collect();
    if failed == expected {
        println!("acceptance: {} of 10 pass; failures match the documented unattainable set {expected:?}", 10 - failed.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing set {failed:?} differs from the documented unattainable set {expected:?}");
        ExitCode::FAILURE
    }
}
