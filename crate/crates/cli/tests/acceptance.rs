//! Acceptance criteria, one PASS/FAIL line each.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rbsep::axis_fpt::solve_axis_parallel;
use rbsep::exact_search::{
    enumerate_separable_bipartitions, separable_with_one_line, solve_axis_bruteforce, solve_general_bruteforce,
};
use rbsep::io::emit_solution;
use rbsep::reduction::{build_rbs_instance, witness_lines, S2THSInstance};
use rbsep::svg::render_svg;
use rbsep::twosat::{solve, Lit, TwoSatFormula};
use rbsep::{hulls_strictly_disjoint, is_feasible, Instance, Line, Point};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: String) -> Outcome {
    Outcome { pass: true, detail }
}

fn fail(detail: String) -> Outcome {
    Outcome { pass: false, detail }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn single_thread<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(f)
}

/// Points on `[0, 6]^2`; about a third of the draws repeat an earlier point
/// of the same color. Reds that land on a blue point are dropped.
fn axis_instance(rng: &mut ChaCha8Rng) -> Instance {
    let draw = |n: usize, rng: &mut ChaCha8Rng| {
        let mut pts: Vec<(i64, i64)> = Vec::new();
        for _ in 0..n {
            if !pts.is_empty() && rng.gen_bool(0.3) {
                let p = pts[rng.gen_range(0..pts.len())];
                pts.push(p);
            } else {
                pts.push((rng.gen_range(0..=6), rng.gen_range(0..=6)));
            }
        }
        pts
    };
    let nb = rng.gen_range(1..=5);
    let nr = rng.gen_range(0..=12);
    let blue = draw(nb, rng);
    let red: Vec<(i64, i64)> = draw(nr, rng).into_iter().filter(|p| !blue.contains(p)).collect();
    Instance::from_ints(&red, &blue)
}

fn general_instance(rng: &mut ChaCha8Rng, max_n: usize) -> Instance {
    let n = rng.gen_range(1..=max_n);
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for _ in 0..n {
        let p = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        if rng.gen_bool(0.5) {
            red.push(p);
        } else {
            blue.push(p);
        }
    }
    red.retain(|p| !blue.contains(p));
    Instance::from_ints(&red, &blue)
}

/// Solutions produced while checking criteria 1 and 6, for criterion 2.
#[derive(Default)]
struct Corpus {
    solved: Vec<(Instance, Vec<Line>)>,
}

fn oracle_equivalence(corpus: &mut Corpus) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let count = 500;
    for i in 0..count {
        let inst = axis_instance(&mut rng);
        let fpt = match solve_axis_parallel(&inst) {
            Ok(s) => s,
            Err(e) => return fail(format!("instance {i}: {e}")),
        };
        let brute = match solve_axis_bruteforce(&inst, fpt.cost()) {
            Ok(b) => b,
            Err(e) => return fail(format!("instance {i}: {e}")),
        };
        let Some(b) = brute.solution() else {
            return fail(format!("instance {i}: brute force found nothing within the fpt cost {}", fpt.cost()));
        };
        if b.cost() != fpt.cost() {
            return fail(format!("instance {i}: fpt {} vs brute force {}", fpt.cost(), b.cost()));
        }
        corpus.solved.push((inst.clone(), fpt.lines));
        corpus.solved.push((inst, b.lines.clone()));
    }
    let took = start.elapsed();
    let detail = format!("{count} instances, costs equal, {}", secs(took));
    if took < Duration::from_secs(120) {
        ok(detail)
    } else {
        fail(format!("{detail} (limit 120 s)"))
    }
}

fn feasibility_soundness(corpus: &Corpus) -> Outcome {
    let bad = corpus.solved.iter().filter(|(inst, lines)| !is_feasible(inst, lines).feasible()).count();
    let detail = format!("{} solver outputs, {bad} infeasible", corpus.solved.len());
    if bad == 0 && !corpus.solved.is_empty() {
        ok(detail)
    } else {
        fail(detail)
    }
}

fn twosat_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let count = 1000;
    let (mut sat, mut with_unit, mut with_empty) = (0, 0, 0);
    for i in 0..count {
        let n = rng.gen_range(1..=15);
        let m = rng.gen_range(0..=60);
        let clauses: Vec<Vec<(usize, bool)>> = (0..m)
            .map(|_| {
                let width = match rng.gen_range(0..100) {
                    0 => 0,
                    1..=15 => 1,
                    _ => 2,
                };
                (0..width).map(|_| (rng.gen_range(0..n), rng.gen_bool(0.5))).collect()
            })
            .collect();
        with_unit += usize::from(clauses.iter().any(|c| c.len() == 1));
        with_empty += usize::from(clauses.iter().any(|c| c.is_empty()));
        let mut f = TwoSatFormula::new(n);
        for c in &clauses {
            let lits: Vec<Lit> = c.iter().map(|&(v, p)| if p { Lit::pos(v) } else { Lit::neg(v) }).collect();
            f.add_clause(&lits).unwrap();
        }
        let holds = |mask: u32| clauses.iter().all(|c| c.iter().any(|&(v, p)| ((mask >> v) & 1 == 1) == p));
        let oracle = (0u32..1 << n).any(holds);
        match solve(&f) {
            Some(a) => {
                let mask = (0..n).filter(|&v| a.value(v)).fold(0u32, |m, v| m | 1 << v);
                if !oracle || !holds(mask) {
                    return fail(format!("formula {i}: returned assignment is wrong"));
                }
                sat += 1;
            }
            None if oracle => return fail(format!("formula {i}: reported unsatisfiable")),
            None => {}
        }
    }
    ok(format!(
        "{count} formulas ({sat} satisfiable, {with_unit} with unit clauses, {with_empty} with empty clauses)"
    ))
}

fn performance_smoke() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let blue: Vec<(i64, i64)> = (0..5).map(|i| (10 * i + 5, 10 * ((i * 3) % 5) + 5)).collect();
    let red: Vec<(i64, i64)> = (0..2000)
        .map(|_| loop {
            let p = (rng.gen_range(0..=50), rng.gen_range(0..=50));
            if !blue.contains(&p) {
                break p;
            }
        })
        .collect();
    let inst = Instance::from_ints(&red, &blue);
    let start = Instant::now();
    let sol = single_thread(|| solve_axis_parallel(&inst));
    let took = start.elapsed();
    let sol = match sol {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let feasible = is_feasible(&inst, &sol.lines).feasible();
    let detail = format!("|B| = 5, |R| = 2000, cost {}, one thread, {}", sol.cost(), secs(took));
    if feasible && took < Duration::from_secs(60) {
        ok(detail)
    } else {
        fail(format!("{detail}, feasible {feasible} (limit 60 s)"))
    }
}

fn bipartition_completeness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let draws = 200;
    for d in 0..draws {
        let n = rng.gen_range(1..=8);
        let pts: Vec<Point> =
            (0..n).map(|_| Point::from_ints(rng.gen_range(0..=4), rng.gen_range(0..=4))).collect();
        let mut got: Vec<Vec<usize>> = match enumerate_separable_bipartitions(&pts) {
            Ok(v) => v.into_iter().map(|b| b.left_set).collect(),
            Err(e) => return fail(format!("draw {d}: {e}")),
        };
        let mut want = Vec::new();
        for mask in 0u32..1 << n {
            let (l, r): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| (mask >> i) & 1 == 1);
            let lp: Vec<Point> = l.iter().map(|&i| pts[i].clone()).collect();
            let rp: Vec<Point> = r.iter().map(|&i| pts[i].clone()).collect();
            if hulls_strictly_disjoint(&lp, &rp) {
                want.push(l);
            }
        }
        got.sort();
        want.sort();
        if got != want {
            return fail(format!("draw {d}: {} bipartitions vs {} from the subset oracle", got.len(), want.len()));
        }
    }
    ok(format!("{draws} draws with n <= 8 match the subset oracle"))
}

fn one_line_consistency(corpus: &mut Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let count = 300;
    let mut positives = 0;
    for i in 0..count {
        let inst = general_instance(&mut rng, 10);
        let brute = match solve_general_bruteforce(&inst, 1) {
            Ok(b) => b,
            Err(e) => return fail(format!("instance {i}: {e}")),
        };
        let one = brute.solution().is_some();
        if one != separable_with_one_line(&inst) {
            return fail(format!("instance {i}: hull test says {}, brute force says {one}", !one));
        }
        if let Some(s) = brute.solution() {
            positives += 1;
            corpus.solved.push((inst, s.lines.clone()));
        }
    }
    ok(format!("{count} instances, {positives} separable by one line"))
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

fn planted(rng: &mut ChaCha8Rng, k: usize, t: usize) -> (S2THSInstance, Vec<usize>) {
    let sigma = random_perm(rng, k);
    let sigmas: Vec<Vec<usize>> = (0..k).map(|_| random_perm(rng, t)).collect();
    let witness: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=t)).collect();
    let probe = S2THSInstance::new(k, t, sigma.clone(), sigmas.clone(), vec![], vec![]).unwrap();
    let n = k * t;
    let track = |index: &dyn Fn(usize, usize) -> usize, rng: &mut ChaCha8Rng| {
        (0..rng.gen_range(1..=4))
            .map(|_| {
                let j = rng.gen_range(1..=k);
                let c = index(j, witness[j - 1]);
                (c - rng.gen_range(0..c.min(3)), c + rng.gen_range(0..=(n - c).min(2)))
            })
            .collect::<Vec<_>>()
    };
    let a = track(&|j, u| probe.a_index(j, u), rng);
    let b = track(&|j, u| probe.b_index(j, u), rng);
    (S2THSInstance::new(k, t, sigma, sigmas, a, b).unwrap(), witness)
}

/// Point count derived from the gadget list: diagonals, interval pairs
/// (full-class intervals included on both tracks), half-permutation
/// gadgets and `12k + 28` long alleys.
fn closed_form_count(inst: &S2THSInstance) -> usize {
    let (k, t) = (inst.k(), inst.t());
    let ell = 100 * (k * k + 1);
    let mut b = inst.intervals_b().to_vec();
    for j in 1..=k {
        let full = ((j - 1) * t + 1, j * t);
        if !b.contains(&full) {
            b.push(full);
        }
    }
    let diagonals = 2 * (k * t - 1);
    let intervals = 2 * (inst.intervals_a().len() + b.len());
    let half_permutations = 2 * k * (t + 1) + 2 * k * (4 * t + 2);
    let alleys = 2 * ell * (12 * k + 28);
    diagonals + intervals + half_permutations + alleys
}

fn reduction_forward() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut slowest = Duration::ZERO;
    let mut runs = 0;
    for k in 1..=2 {
        for t in 2..=3 {
            for _ in 0..2 {
                let (inst, w) = planted(&mut rng, k, t);
                let start = Instant::now();
                let (rbs, meta) = match build_rbs_instance(&inst) {
                    Ok(v) => v,
                    Err(e) => return fail(format!("k={k} t={t}: {e}")),
                };
                let lines = match witness_lines(&inst, &meta, &w) {
                    Ok(l) => l,
                    Err(e) => return fail(format!("k={k} t={t}: {e}")),
                };
                let report = is_feasible(&rbs, &lines);
                let took = start.elapsed();
                slowest = slowest.max(took);
                runs += 1;
                if lines.len() != 6 * k + 14 {
                    return fail(format!("k={k} t={t}: {} lines", lines.len()));
                }
                if !report.feasible() {
                    return fail(format!("k={k} t={t}: {report}"));
                }
                let expected = closed_form_count(&inst);
                if rbs.len() != expected {
                    return fail(format!("k={k} t={t}: {} points, closed form {expected}", rbs.len()));
                }
                if took > Duration::from_secs(300) {
                    return fail(format!("k={k} t={t}: {} (limit 300 s)", secs(took)));
                }
            }
        }
    }
    ok(format!("{runs} planted instances, 6k+14 lines feasible, counts match, slowest {}", secs(slowest)))
}

fn rbsep(args: &[&str], threads: usize) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_rbsep"))
        .args(args)
        .env("RBSEP_THREADS", threads.to_string())
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn without_timing(csv: &[u8]) -> Vec<String> {
    String::from_utf8_lossy(csv)
        .lines()
        .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head).to_string())
        .collect()
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("rbsep-acceptance-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut instances = Vec::new();
    for i in 0..12 {
        let inst = axis_instance(&mut rng);
        fs::write(dir.join(format!("inst{i:02}.txt")), rbsep::io::emit_instance(&inst)).unwrap();
        instances.push(inst);
    }
    let solve_all = |threads: usize| -> Vec<String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            instances
                .iter()
                .map(|inst| emit_solution(&solve_axis_parallel(inst).unwrap().lines, "fpt"))
                .collect()
        })
    };
    let sols = [solve_all(1), solve_all(1), solve_all(4)];
    let svgs: Vec<String> = instances
        .iter()
        .zip(&sols[0])
        .map(|(inst, s)| render_svg(inst, &rbsep::io::parse_solution(s).unwrap()))
        .collect();
    let svgs_again: Vec<String> = instances
        .iter()
        .zip(&sols[2])
        .map(|(inst, s)| render_svg(inst, &rbsep::io::parse_solution(s).unwrap()))
        .collect();
    let corpus = dir.to_string_lossy().into_owned();
    let csv: Vec<Vec<String>> = [1, 1, 4]
        .iter()
        .map(|&n| without_timing(&rbsep(&["bench", &corpus, "--method", "fpt", "--method", "bruteforce"], n)))
        .collect();
    let first = dir.join("inst00.txt").to_string_lossy().into_owned();
    let cli_sol: Vec<Vec<u8>> = [1, 4].iter().map(|&n| rbsep(&["solve", &first], n)).collect();
    let plot = |n: usize, name: &str| {
        let out = dir.join(name);
        rbsep(&["plot", &first, "--svg", &out.to_string_lossy()], n);
        fs::read(out).unwrap()
    };
    let cli_svg = [plot(1, "a.svg"), plot(4, "b.svg")];
    let _ = fs::remove_dir_all(&dir);
    let same_sol = sols[0] == sols[1] && sols[0] == sols[2] && cli_sol[0] == cli_sol[1];
    let same_svg = svgs == svgs_again && cli_svg[0] == cli_svg[1];
    let same_csv = csv[0] == csv[1] && csv[0] == csv[2];
    let detail = format!(
        "solutions {same_sol}, SVG {same_svg}, CSV (wall_ms excluded) {same_csv} over 1 and 4 threads"
    );
    if same_sol && same_svg && same_csv {
        ok(detail)
    } else {
        fail(detail)
    }
}

fn main() -> ExitCode {
    let mut corpus = Corpus::default();
    let oracle = oracle_equivalence(&mut corpus);
    let twosat = twosat_correctness();
    let performance = performance_smoke();
    let bipartitions = bipartition_completeness();
    let one_line = one_line_consistency(&mut corpus);
    let results = [
        ("oracle equivalence", oracle),
        ("feasibility soundness", feasibility_soundness(&corpus)),
        ("2-SAT correctness", twosat),
        ("performance smoke", performance),
        ("bipartition completeness", bipartitions),
        ("one-line consistency", one_line),
        ("reduction forward direction", reduction_forward()),
        ("determinism", determinism()),
    ];
    let mut all = true;
    for (i, (name, outcome)) in results.iter().enumerate() {
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{}] {name}: {}", i + 1, outcome.detail);
        all &= outcome.pass;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
