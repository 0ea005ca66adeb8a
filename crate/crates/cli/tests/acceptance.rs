//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

use hamcomp::autgroup::{automorphism_group, sem_array_of, DEFAULT_CAP};
use hamcomp::compression::{
    cycle_compression, ham_array, hamilton_compression, predict_kappa_circulant, semiregular_subgroup_reps, Mode,
};
use hamcomp::families;
use hamcomp::hamlift::{enumerate_hamcycles, find_symmetric_hamcycle, quotient_with_voltages, QuotientCycle};
use hamcomp::numth::{element_of_order, gcd};
use hamcomp::{Graph, Perm};
use hamcomp_cli::verify::{self, Status};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kappa(g: &Graph, mode: Mode) -> Result<usize, String> {
    let r = hamilton_compression(g, mode).map_err(|e| e.to_string())?;
    ensure(r.exact, || format!("{mode:?} result is only a lower bound"))?;
    Ok(r.kappa)
}

fn trial_division_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn petersen_facts() -> Outcome {
    let p = families::petersen().graph;
    for mode in [Mode::Lift, Mode::Exhaustive] {
        let k = kappa(&p, mode)?;
        ensure(k == 0, || format!("kappa {k} in {mode:?} mode"))?;
    }
    let sem = sem_array_of(&automorphism_group(&p, DEFAULT_CAP)).values();
    ensure(sem == [1, 5], || format!("Sem = {sem:?}"))?;
    let ham = ham_array(&p).map_err(|e| e.to_string())?;
    ensure(ham.exact && ham.values == [0], || format!("Ham = {:?}", ham.values))?;
    Ok("kappa 0, Sem [1,5], Ham [0]".into())
}

fn petersen_complement() -> Outcome {
    let g = families::petersen().graph.complement();
    let k = kappa(&g, Mode::Exhaustive)?;
    ensure(k == 5, || format!("kappa {k}"))?;
    let ham = ham_array(&g).map_err(|e| e.to_string())?;
    let sem = sem_array_of(&automorphism_group(&g, DEFAULT_CAP)).values();
    ensure(ham.exact && ham.values == [1, 5] && sem == [1, 5], || {
        format!("Ham {:?} Sem {sem:?}", ham.values)
    })?;
    Ok("kappa 5, Ham = Sem = [1,5]".into())
}

fn theorem_22_sweep() -> Outcome {
    let mut count = 0;
    for k in 2..=6u64 {
        let primes: Vec<u64> = (2..=50).filter(|&p| trial_division_prime(p) && p % k == 1).collect();
        let listed: Vec<u64> = verify::thm22_instances(&[k], 50).into_iter().map(|(_, p, _)| p).collect();
        ensure(primes == listed, || format!("k={k}: primes {listed:?}, expected {primes:?}"))?;
        for p in primes {
            let r = element_of_order(k, p).map_err(|e| e.to_string())?;
            let x = families::x_mnr(k, p, r).map_err(|e| e.to_string())?;
            let got = kappa(&x.graph, Mode::Lift)?;
            ensure(got == k as usize, || format!("X({k},{p};{r}) has kappa {got}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} instances, kappa = k"))
}

fn proposition_21_bounds() -> Outcome {
    for n in [5u64, 7, 9, 11] {
        let k = kappa(&families::generalized_petersen(n, 1).unwrap().graph, Mode::Lift)?;
        ensure(k >= 2, || format!("prism {n}: kappa {k}"))?;
    }
    for n in [4u64, 6, 8] {
        let k = kappa(&families::generalized_petersen(n, 1).unwrap().graph, Mode::Lift)?;
        ensure(k as u64 >= n / 2, || format!("prism {n}: kappa {k}"))?;
    }
    let xs = [(3u64, 7u64, 2u64), (3, 13, 3), (4, 5, 2), (4, 13, 5), (5, 11, 3), (6, 7, 3)];
    for (m, n, r) in xs {
        let k = kappa(&families::x_mnr(m, n, r).unwrap().graph, Mode::Lift)?;
        ensure(k as u64 >= m, || format!("X({m},{n};{r}): kappa {k}"))?;
    }
    Ok(format!("7 prisms, {} X(m,n;r) instances", xs.len()))
}

fn theorem_31_desk() -> Outcome {
    let y = families::y_qp(2, 13, 2).map_err(|e| e.to_string())?;
    let g = &y.graph;
    ensure(g.regular_degree() == Some(3) && g.n() == 26, || "Y(2,13) is not cubic on 26 vertices".into())?;
    let all = enumerate_hamcycles(g, u64::MAX);
    ensure(all.exhaustive && !all.cycles.is_empty(), || "enumeration empty or incomplete".into())?;
    let best = all
        .cycles
        .iter()
        .map(|c| cycle_compression(g, c).map(|c| c.k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?
        .into_iter()
        .max()
        .unwrap();
    ensure(best == 1, || format!("max compression over all cycles is {best}"))?;
    let reps = semiregular_subgroup_reps(&automorphism_group(g, DEFAULT_CAP));
    let mut searched = 0;
    for a in reps.values().flatten() {
        let found = find_symmetric_hamcycle(g, a).map_err(|e| e.to_string())?;
        ensure(found.is_none(), || format!("symmetric cycle for an element of order {}", a.order()))?;
        searched += 1;
    }
    let petersen = verify::run_jobs(verify::thm31_jobs(&[(2, 5, 2)]), &verify::Options::default());
    ensure(petersen.len() == 1 && petersen[0].status == Status::DiscrepancyRecorded, || {
        format!("Y(2,5) record status {:?}", petersen[0].status)
    })?;
    Ok(format!(
        "{} cycles all kappa 1, {searched} symmetric searches empty, Y(2,5) discrepancy-recorded",
        all.cycles.len()
    ))
}

fn theorem_43_cross_check() -> Outcome {
    let corpus = verify::thm43_corpus();
    ensure(corpus.len() >= 10, || "corpus too small".into())?;
    ensure(corpus.iter().all(|(_, i)| i.graph.n() <= 40), || "instance above 40 vertices".into())?;
    let names: BTreeSet<&str> = corpus.iter().map(|(n, _)| *n).collect();
    for required in ["petersen", "prism5", "prism7", "x(3,7;2)", "triple7[S=S',T=-T]", "petersen-complement"] {
        ensure(names.contains(required), || format!("corpus lacks {required}"))?;
    }
    let records = verify::run_jobs(verify::thm43_jobs(), &verify::Options::default());
    let mut recorded = 0;
    for r in &records {
        match r.status {
            Status::Pass => {}
            Status::DiscrepancyRecorded if r.notes.iter().any(|n| n.contains("case (iv)")) => recorded += 1,
            s => return Err(format!("{}: {s:?}, predicted {} computed {}", r.params, r.predicted, r.computed)),
        }
    }
    Ok(format!("{} instances agree, {recorded} case-(iv) records", records.len() - recorded))
}

fn proposition_42() -> Outcome {
    for variant in [families::P3Variant::Heisenberg, families::P3Variant::Modular] {
        let start = Instant::now();
        let g = families::cayley_p3(3, variant, &["a", "A", "b", "B"]).map_err(|e| e.to_string())?.graph;
        let k = kappa(&g, Mode::Lift)?;
        ensure(k >= 3, || format!("{variant:?}: kappa {k}"))?;
        ensure(verify::symmetric_search_succeeds(&g, 3), || format!("{variant:?}: no 3-symmetric cycle"))?;
        ensure(start.elapsed() < Duration::from_secs(120), || format!("{variant:?} too slow"))?;
    }
    Ok("both groups of order 27: kappa >= 3, k = 3 search succeeds".into())
}

fn circulant_rule() -> Outcome {
    for (n, s, expected) in [(15u64, vec![1i64, 14], 15usize), (15, vec![3, 12, 5, 10], 1)] {
        let predicted = predict_kappa_circulant(n, &s).map_err(|e| e.to_string())?;
        let g = families::circulant(n, &s).map_err(|e| e.to_string())?.graph;
        let computed = kappa(&g, Mode::Lift)?;
        ensure(predicted as usize == expected && computed == expected, || {
            format!("circulant({n},{s:?}): predicted {predicted}, computed {computed}")
        })?;
    }
    Ok("15 and 1".into())
}

fn oracle_corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> =
        verify::thm43_corpus().into_iter().map(|(n, i)| (n.to_string(), i.graph)).collect();
    for n in 3..=9 {
        out.push((format!("C{n}"), Graph::cycle(n)));
    }
    for n in 4..=7 {
        out.push((format!("K{n}"), Graph::complete(n)));
    }
    for n in 3..=8 {
        out.push((format!("prism{n}"), families::generalized_petersen(n, 1).unwrap().graph));
    }
    let circulants: [(u64, &[i64]); 7] = [
        (6, &[1, 5, 3]),
        (8, &[1, 7, 4]),
        (10, &[1, 9, 3, 7]),
        (12, &[1, 11, 5, 7]),
        (12, &[2, 10, 3, 9]),
        (15, &[3, 12, 5, 10]),
        (16, &[1, 15, 8]),
    ];
    for (n, s) in circulants {
        out.push((format!("circ({n},{s:?})"), families::circulant(n, s).unwrap().graph));
    }
    out.push(("GP(6,2)".into(), families::generalized_petersen(6, 2).unwrap().graph));
    out.push(("GP(8,3)".into(), families::generalized_petersen(8, 3).unwrap().graph));
    out.push(("X(2,6;5)".into(), families::x_mnr(2, 6, 5).unwrap().graph));
    out.push(("X(4,5;2)".into(), families::x_mnr(4, 5, 2).unwrap().graph));
    out
}

fn oracle_equivalence() -> Outcome {
    let (mut compared, mut replayed) = (0, 0);
    for (name, g) in oracle_corpus() {
        let lift = hamilton_compression(&g, Mode::Lift).map_err(|e| e.to_string())?;
        let mut certs: Vec<_> = lift.certificate.iter().cloned().collect();
        if g.n() <= 16 {
            let ex = hamilton_compression(&g, Mode::Exhaustive).map_err(|e| e.to_string())?;
            ensure(ex.exact && lift.exact && ex.kappa == lift.kappa, || {
                format!("{name}: lift {} vs exhaustive {}", lift.kappa, ex.kappa)
            })?;
            compared += 1;
            certs.extend(ex.certificate);
            certs.extend(ham_array(&g).map_err(|e| e.to_string())?.certificates);
        }
        for cert in certs {
            let again = cycle_compression(&g, &cert.cycle).map_err(|e| e.to_string())?;
            ensure(again.k == cert.k && cert.verify(&g).is_ok(), || format!("{name}: certificate for {} fails", cert.k))?;
            replayed += 1;
        }
    }
    Ok(format!("{compared} graphs compared, {replayed} certificates replayed"))
}

fn acts_as_rotation(seq: &[usize], a: &Perm) -> bool {
    let n = seq.len();
    let mut pos = vec![0; n];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    let d = pos[a.apply(seq[0])];
    (0..n).all(|i| pos[a.apply(seq[i])] == (i + d) % n)
}

/// Graphs with semiregular automorphisms, a few fixed and the rest random circulants.
fn lifting_pool(rng: &mut StdRng) -> Vec<Graph> {
    let mut pool = vec![
        families::x_mnr(3, 7, 2).unwrap().graph,
        families::x_mnr(4, 5, 2).unwrap().graph,
        families::petersen().graph.complement(),
        families::generalized_petersen(8, 3).unwrap().graph,
        families::generalized_petersen(10, 3).unwrap().graph,
        families::metacirculant_triple_2p(7, &[1, 6], &[1, 6], &[0, 1, 6]).unwrap().graph,
        families::cayley_p3(3, families::P3Variant::Heisenberg, &["a", "A", "b", "B"]).unwrap().graph,
    ];
    while pool.len() < 30 {
        let n = rng.random_range(6..=18u64);
        let half: Vec<i64> = (1..=(n as i64) / 2).filter(|_| rng.random_bool(0.4)).collect();
        let s: Vec<i64> = half.iter().flat_map(|&x| [x, n as i64 - x]).collect();
        if let Ok(c) = families::circulant(n, &s) {
            if c.graph.is_connected() && c.graph.regular_degree().unwrap_or(0) >= 2 {
                pool.push(c.graph);
            }
        }
    }
    pool
}

fn lifting_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_2026);
    // (graph index, alpha, generating quotient cycles) candidates.
    let mut candidates = Vec::new();
    let pool = lifting_pool(&mut rng);
    for (gi, g) in pool.iter().enumerate() {
        let group = automorphism_group(g, DEFAULT_CAP);
        for a in semiregular_subgroup_reps(&group).into_values().flatten() {
            let qg = quotient_with_voltages(g, &a).map_err(|e| e.to_string())?;
            let mut cycles: Vec<(QuotientCycle, usize)> = Vec::new();
            qg.for_each_cycle::<()>(|c, net| {
                if gcd(net as u64, qg.k as u64) == 1 {
                    cycles.push((c.clone(), net));
                }
                if cycles.len() >= 64 {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if !cycles.is_empty() {
                candidates.push((gi, qg, cycles));
            }
        }
    }
    ensure(!candidates.is_empty(), || "no liftable candidates".into())?;
    for trial in 0..1000 {
        let (gi, qg, cycles) = candidates.choose(&mut rng).unwrap();
        let (c, net) = cycles.choose(&mut rng).unwrap();
        let g = &pool[*gi];
        let lifted = qg.lift(c).map_err(|e| format!("trial {trial}: {e}"))?;
        lifted.validate(g).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(acts_as_rotation(lifted.seq(), &qg.alpha), || format!("trial {trial}: not invariant"))?;
        ensure(qg.project(lifted.seq()).ok().as_ref() == Some(c), || format!("trial {trial}: projection differs"))?;
        let back = qg.net_voltage(&qg.reverse(c));
        ensure((back + net) % qg.k == 0, || format!("trial {trial}: reversal gives {back}, net {net}"))?;
    }
    Ok(format!("1000 lifts from {} (graph, automorphism) pairs", candidates.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "Petersen facts", limit: Duration::from_secs(1), run: petersen_facts },
        Criterion { id: 2, name: "complement of Petersen", limit: Duration::from_secs(30), run: petersen_complement },
        Criterion { id: 3, name: "X(k,p;r) sweep, kappa = k", limit: Duration::from_secs(600), run: theorem_22_sweep },
        Criterion { id: 4, name: "prism and X(m,n;r) lower bounds", limit: Duration::from_secs(120), run: proposition_21_bounds },
        Criterion { id: 5, name: "Y(2,13) has kappa 1", limit: Duration::from_secs(300), run: theorem_31_desk },
        Criterion { id: 6, name: "(q,p)-metacirculant case table", limit: Duration::from_secs(900), run: theorem_43_cross_check },
        Criterion { id: 7, name: "Cayley graphs of order 27, kappa >= 3", limit: Duration::from_secs(240), run: proposition_42 },
        Criterion { id: 8, name: "circulant rule on 15 vertices", limit: Duration::from_secs(120), run: circulant_rule },
        Criterion { id: 9, name: "lift vs exhaustive, certificate replay", limit: Duration::from_secs(600), run: oracle_equivalence },
        Criterion { id: 10, name: "lifting soundness, 1000 random triples", limit: Duration::from_secs(600), run: lifting_soundness },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.limit => Err(format!("{detail}; took {took:?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {}: {detail} ({took:.2?})", c.id, c.name),
            Err(why) => {
                failures += 1;
                println!("FAIL [{:>2}] {}: {why} ({took:.2?})", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
