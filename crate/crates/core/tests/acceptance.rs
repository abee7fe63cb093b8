//! End-to-end acceptance checks. Runs without the libtest harness so that
//! one PASS/FAIL line per criterion is always printed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wdlab::coloring::{
    check_simplicial_sink_hypothesis, conjecture_sweep, find_additive_coloring, ListAssignment,
};
use wdlab::eulerian::{
    count_ee_eo_bruteforce, count_ee_eo_classic, count_ee_eo_wd,
    count_orientations_with_outdegrees, decompose_into_gamma_paths, enumerate_eulerian_spanning,
    enumerate_gamma_selections,
};
use wdlab::gen;
use wdlab::poly::{additive_coefficient, classical_coefficient};
use wdlab::samples::{d1, d2, d3};
use wdlab::wd::{all_gamma_paths, build_wd};
use wdlab::{Graph, Orientation, Vertex};

/// Arc bound for brute-force enumeration; W(D3) already has 32 arcs.
const BRUTE_BOUND: usize = 256;
const SPACE: u128 = 10_000_000;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

fn figures() -> [(&'static str, Orientation); 3] {
    [("D1", d1()), ("D2", d2()), ("D3", d3())]
}

/// Simple digraphs on 1..=max_n vertices with a random edge density.
fn random_digraph(rng: &mut ChaCha8Rng, max_n: u32) -> Orientation {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.2..=0.9);
    let g = gen::random_graph(n, p, rng);
    gen::random_orientation(&g, rng)
}

fn corpus() -> Vec<Orientation> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    (0..240).map(|_| random_digraph(&mut rng, 5)).collect()
}

fn figure_counts() -> Outcome {
    let expected = [(3u32, 1u32), (2, 8), (12, 0)];
    for ((name, d), (ee, eo)) in figures().into_iter().zip(expected) {
        let start = Instant::now();
        let c = count_ee_eo_wd(&d);
        within(start, Duration::from_secs(5))?;
        check(c.ee == ee.into() && c.eo == eo.into(), || {
            format!("{name}: got ({}, {}), want ({ee}, {eo})", c.ee, c.eo)
        })?;
    }
    Ok("(3,1) (2,8) (12,0)".into())
}

fn additive_identity(corpus: &[Orientation]) -> Outcome {
    let start = Instant::now();
    for ((name, d), want) in figures().into_iter().zip([2, -6, 12]) {
        let coeff = additive_coefficient(&d);
        let brute = count_ee_eo_bruteforce(&build_wd(&d).to_digraph(), BRUTE_BOUND)
            .map_err(|e| e.to_string())?;
        check(
            coeff == BigInt::from(want) && brute.difference() == coeff,
            || {
                format!(
                    "{name}: coefficient {coeff}, brute force {}",
                    brute.difference()
                )
            },
        )?;
    }
    for (i, d) in corpus.iter().enumerate() {
        let coeff = additive_coefficient(d);
        let brute = count_ee_eo_bruteforce(&build_wd(d).to_digraph(), BRUTE_BOUND)
            .map_err(|e| e.to_string())?;
        check(brute.difference() == coeff, || {
            format!(
                "digraph #{i}: coefficient {coeff}, ee-eo {}\n{}",
                brute.difference(),
                d.to_file_string()
            )
        })?;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "figures plus {} random digraphs in {:.2?}",
        corpus.len(),
        start.elapsed()
    ))
}

fn classical_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut checked = 0;
    while checked < 500 {
        let d = random_digraph(&mut rng, 6);
        if d.arc_count() > 12 {
            continue;
        }
        let c = count_ee_eo_classic(&d, BRUTE_BOUND).map_err(|e| e.to_string())?;
        let coeff = classical_coefficient(&d);
        check(coeff == c.difference(), || {
            format!(
                "coefficient {coeff}, EE-EO {}\n{}",
                c.difference(),
                d.to_file_string()
            )
        })?;
        checked += 1;
    }
    Ok(format!("{checked} random digraphs"))
}

fn structure() -> Outcome {
    let mut counts = Vec::new();
    for (name, d) in figures() {
        let w = build_wd(&d);
        let h = w.to_digraph();
        let subsets = enumerate_eulerian_spanning(&h, BRUTE_BOUND).map_err(|e| e.to_string())?;
        for s in &subsets {
            check(decompose_into_gamma_paths(&w, s).is_some(), || {
                format!("{name}: subset {s:?} has no path decomposition")
            })?;
        }
        let mut built: Vec<Vec<usize>> = enumerate_gamma_selections(&d)
            .iter()
            .map(|s| s.wd_arc_indices(&w))
            .collect();
        for s in &built {
            check(h.is_eulerian_subset(s), || {
                format!("{name}: selection {s:?} is not Eulerian")
            })?;
        }
        built.sort();
        check(built.len() == subsets.len(), || {
            format!(
                "{name}: {} selections vs {} subsets",
                built.len(),
                subsets.len()
            )
        })?;
        check(built == subsets, || {
            format!("{name}: subset families differ")
        })?;
        counts.push(format!("{name}={}", subsets.len()));
    }
    Ok(counts.join(" "))
}

fn disjointness() -> Outcome {
    let mut pairs = 0usize;
    for (name, d) in figures() {
        let paths = all_gamma_paths(&d);
        for (i, p) in paths.iter().enumerate() {
            let pe: BTreeSet<_> = p.edges().into_iter().collect();
            for q in &paths[i + 1..] {
                pairs += 1;
                let disjoint = q.edges().iter().all(|e| !pe.contains(e));
                check(disjoint == (p.arc != q.arc), || {
                    format!(
                        "{name}: paths to {} and {} (arcs {:?}, {:?})",
                        p.target, q.target, p.arc, q.arc
                    )
                })?;
            }
        }
    }
    Ok(format!("{pairs} pairs, 0 counterexamples"))
}

fn bipartite_family() -> Outcome {
    let graphs = [
        ("C4", gen::cycle(4)),
        ("C6", gen::cycle(6)),
        ("K2,3", gen::complete_bipartite(2, 3)),
        ("P5", gen::path(5)),
    ];
    let mut total = 0;
    for (name, g) in graphs {
        let g = g.map_err(|e| e.to_string())?;
        for d in gen::enumerate_orientations(&g, 20).map_err(|e| e.to_string())? {
            let c = count_ee_eo_wd(&d);
            let coeff = additive_coefficient(&d);
            check(
                c.eo.is_zero() && coeff >= BigInt::one() && coeff == c.difference(),
                || {
                    format!(
                        "{name}: eo {} coefficient {coeff} for\n{}",
                        c.eo,
                        d.to_file_string()
                    )
                },
            )?;
            total += 1;
        }
    }
    Ok(format!("{total} orientations, all eo=0"))
}

fn sun_and_k4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for k in [2, 3] {
        let d = gen::sun(k).map_err(|e| e.to_string())?;
        let g = d.underlying();
        check(
            check_simplicial_sink_hypothesis(&g, &d).map_err(|e| e.to_string())?,
            || format!("sun({k}) fails the hypothesis"),
        )?;
        check(count_ee_eo_wd(&d).eo.is_zero(), || {
            format!("sun({k}) has odd Eulerian subdigraphs")
        })?;
        for trial in 0..50 {
            let lists = ListAssignment::random_for(&d, 50, &mut rng).map_err(|e| e.to_string())?;
            let found = find_additive_coloring(&g, &lists, SPACE).map_err(|e| e.to_string())?;
            check(found.is_some(), || {
                format!("sun({k}) trial {trial}: no coloring")
            })?;
        }
    }
    let k4 = gen::complete(4).map_err(|e| e.to_string())?;
    let mut n = 0;
    for d in gen::enumerate_orientations(&k4, 20).map_err(|e| e.to_string())? {
        check(
            !check_simplicial_sink_hypothesis(&k4, &d).map_err(|e| e.to_string())?,
            || {
                format!(
                    "K4 orientation satisfies the hypothesis:\n{}",
                    d.to_file_string()
                )
            },
        )?;
        n += 1;
    }
    Ok(format!(
        "sun(2), sun(3) colorable 50/50; K4 false on {n}/64"
    ))
}

fn coloring_consequence(corpus: &[Orientation]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut nonzero = 0;
    for (i, d) in corpus.iter().enumerate() {
        if additive_coefficient(d).is_zero() {
            continue;
        }
        nonzero += 1;
        let g = d.underlying();
        for trial in 0..20 {
            let lists = ListAssignment::random_for(d, 50, &mut rng).map_err(|e| e.to_string())?;
            let found = find_additive_coloring(&g, &lists, SPACE).map_err(|e| e.to_string())?;
            check(found.is_some(), || {
                format!("digraph #{i} trial {trial}: no coloring")
            })?;
        }
    }
    Ok(format!(
        "{nonzero} digraphs x 20 list assignments, 0 failures"
    ))
}

fn orientation_bijection() -> Outcome {
    let start = Instant::now();
    let d = d1();
    let h = build_wd(&d).to_digraph();
    let direct = count_orientations_with_outdegrees(&h, BRUTE_BOUND).map_err(|e| e.to_string())?;
    let c = count_ee_eo_wd(&d);
    within(start, Duration::from_secs(120))?;
    check(direct == 4u32.into() && direct == c.total(), || {
        format!("orientations {direct}, ee+eo {}", c.total())
    })?;
    Ok(format!(
        "{} edges, 4 orientations = ee+eo in {:.2?}",
        h.arcs.len(),
        start.elapsed()
    ))
}

/// One representative per isomorphism class of graphs on `n` vertices.
fn graphs_up_to_iso(n: Vertex) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<_> = edges
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = (p[a as usize - 1], p[b as usize - 1]);
                        (x.min(y), x.max(y))
                    })
                    .collect();
                e.sort();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(Graph::new(n, edges).expect("simple graph"));
        }
    }
    out
}

fn permutations(n: Vertex) -> Vec<Vec<Vertex>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n);
            out.push(q);
        }
    }
    out
}

fn sweep() -> Outcome {
    let start = Instant::now();
    let mut connected = 0;
    let mut all = 0;
    for n in 1..=4 {
        for g in graphs_up_to_iso(n) {
            let report = conjecture_sweep(&g, 20, None, 2).map_err(|e| e.to_string())?;
            all += 1;
            let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}{v}")).collect();
            let witness = report.witness.as_ref().map_or("none".to_string(), |w| {
                let arcs: Vec<String> = w
                    .orientation
                    .arcs()
                    .map(|(a, b)| format!("{a}>{b}"))
                    .collect();
                format!(
                    "#{} [{}] coefficient {}",
                    w.index,
                    arcs.join(" "),
                    w.coefficient
                )
            });
            println!(
                "    n={n} edges=[{}]{} nonzero {}/{} witness {witness}",
                edges.join(" "),
                if g.is_connected() {
                    ""
                } else {
                    " (disconnected)"
                },
                report.examined - report.zero_count,
                report.total_orientations,
            );
            if g.is_connected() {
                connected += 1;
                check(report.witness.is_some(), || {
                    format!("no witness for connected graph {edges:?}")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{connected} connected graphs ({all} in total) each have a witness, {:.2?}; empirical only",
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("figure Eulerian counts", Box::new(figure_counts)),
        (
            "additive coefficient = ee - eo",
            Box::new(|| additive_identity(&corpus)),
        ),
        (
            "classical coefficient = EE - EO",
            Box::new(classical_identity),
        ),
        ("Eulerian subsets = path selections", Box::new(structure)),
        ("path disjointness across sectors", Box::new(disjointness)),
        (
            "bipartite orientations have eo = 0",
            Box::new(bipartite_family),
        ),
        ("simplicial-sink graphs are colorable", Box::new(sun_and_k4)),
        (
            "nonzero coefficient implies colorable",
            Box::new(|| coloring_consequence(&corpus)),
        ),
        (
            "orientation count = ee + eo",
            Box::new(orientation_bijection),
        ),
        ("every small connected graph has a witness", Box::new(sweep)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!(
                "PASS {:>2} {name}: {detail} [{:.2?}]",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
