use std::time::Instant;

use serde_json::json;

use pathcoupling::analysis::{
    f_threshold, indset_weights, min_q_for_contraction, solve_beta, tricol_weights, verify_indset_recurrence,
    verify_tricol_system, AlphaPrimeV,
};
use pathcoupling::chains::{exact_transition_matrix, ChainKind};
use pathcoupling::counting::{approx_count_indsets, brute_count_indsets, brute_count_sat};
use pathcoupling::coupling::{
    estimate_alpha_p, exact_onestep_drift_indset, exact_onestep_drift_tricol, mc_drift_multicolour, tail_bound_check,
    IndsetSystem, StopMetric,
};
use pathcoupling::instances::{gen_bipartite, gen_hypergraph, to_monotone_cnf, Hypergraph};
use pathcoupling::{RandomSource, Rational};

use crate::commands::TABLE1_DEGREES;
use crate::input;
use crate::report::Report;
use crate::{Cli, Failure, Suite, VerifyArgs};

/// Minimum palette sizes as printed, aligned with `TABLE1_DEGREES`.
const TABLE1_Q: [u64; 43] = [
    17, 19, 21, 23, 25, 26, 28, 30, 32, 33, 35, 37, 39, 40, 42, 44, 46, 48, 49, 51, 53, 55, 56, 58, 60, 61, 63, 65, 67,
    68, 70, 72, 74, 75, 77, 79, 81, 83, 84, 86, 88, 90, 17634,
];

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

fn weight_systems() -> Check {
    let mut n = 0;
    let mut bad = Vec::new();
    for m in 2..=16usize {
        let f = f_threshold(m).expect("f(m)");
        for d in (1usize..).take_while(|&d| int(d as u64) < f) {
            let w = indset_weights(m, d).expect("indset weights");
            let mono = w.c.windows(2).all(|p| p[0] <= p[1]);
            if !verify_indset_recurrence(&w).passed() || !mono {
                bad.push(format!("indset m={m} Δ={d}"));
            }
            n += 1;
        }
    }
    for d in 1..=20u64 {
        let q = (3 * d).div_ceil(2) + 1;
        let w = tricol_weights(q, d).expect("colouring weights");
        let mono = w.c.windows(2).all(|p| p[0] >= p[1]);
        if !verify_tricol_system(&w).passed() || !mono {
            bad.push(format!("tricol Δ={d} q={q}"));
        }
        n += 1;
    }
    Check { name: "weight_systems", pass: bad.is_empty(), detail: format!("{n} systems, failures {bad:?}") }
}

fn beta(precision: usize) -> Check {
    let b = solve_beta(precision.max(30)).to_f64();
    let mut x = 0.5f64;
    for _ in 0..100 {
        x -= (x * x.exp() - 1.0) / ((1.0 + x) * x.exp());
    }
    Check { name: "beta", pass: (b - 1.0 / x).abs() <= 1e-10, detail: format!("β = {b:.12}") }
}

fn small_corpus(max_n: usize) -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for m in 2..=4 {
            for d in 1..=3 {
                if let Ok(h) = gen_hypergraph(n, m, d, n as u64) {
                    out.push(h);
                }
            }
        }
    }
    out
}

fn kernels() -> Check {
    let mut n = 0;
    let mut bad = 0;
    for h in small_corpus(10) {
        if let Ok(p) = exact_transition_matrix(ChainKind::Indset, &h, 0) {
            n += 1;
            bad += usize::from(!p.is_row_stochastic() || !p.is_symmetric() || p.uniform_drift() > 1e-12);
        }
        if h.uniform_edge_size() == Some(3) {
            if let Ok(p) = exact_transition_matrix(ChainKind::Tricol, &h, h.max_degree() as u32 + 2) {
                n += 1;
                bad += usize::from(!p.is_row_stochastic() || p.uniform_drift() > 1e-12);
            }
        }
    }
    Check { name: "uniform_stationarity", pass: bad == 0 && n > 0, detail: format!("{n} kernels, {bad} failures") }
}

fn indset_drift(instances: u64) -> Check {
    let families = [(3usize, 2usize), (4, 2), (4, 3), (5, 3), (3, 1), (6, 4)];
    let (mut pairs, mut bad) = (0, 0);
    for i in 0..instances {
        let (m, d) = families[i as usize % families.len()];
        let Ok(h) = gen_hypergraph(8 + (i as usize * 7) % 25, m, d, i) else { continue };
        let w = indset_weights(m, h.max_degree()).expect("indset weights");
        for p in 0..5 {
            if let Some((x, y)) = input::indset_pair(&h, &RandomSource::new(i).child(p)) {
                pairs += 1;
                bad += usize::from(!exact_onestep_drift_indset(&h, &x, &y, &w).expect("drift").pass);
            }
        }
    }
    Check { name: "indset_drift", pass: bad == 0, detail: format!("{pairs} pairs, {bad} violations") }
}

fn tricol_drift(instances: u64) -> Check {
    let (mut pairs, mut bad, mut class_bad) = (0, 0, 0);
    for i in 0..instances {
        let Ok(h) = gen_hypergraph(8 + (i as usize * 5) % 25, 3, 2 + i as usize % 4, i) else { continue };
        let d = h.max_degree() as u64;
        let q = (3 * d).div_ceil(2) + 1;
        let w = tricol_weights(q, d).expect("colouring weights");
        for p in 0..5 {
            if let Some((x, y)) = input::tricol_pair(&h, q as u32, &RandomSource::new(i).child(p)) {
                let rep = exact_onestep_drift_tricol(&h, &x, &y, &w).expect("drift");
                let e = rep.exact.as_ref().expect("exact drift");
                pairs += 1;
                bad += usize::from(!rep.pass);
                class_bad += usize::from(e.profile_bound.as_ref().is_some_and(|b| e.d1 > *b));
            }
        }
    }
    Check {
        name: "tricol_drift",
        pass: bad == 0,
        detail: format!("{pairs} pairs, {bad} violations; per-class inequality violations {class_bad}"),
    }
}

fn counting(max_n: usize) -> Check {
    let corpus = small_corpus(max_n);
    let bad = corpus
        .iter()
        .filter(|h| {
            brute_count_indsets(h).expect("count").count != brute_count_sat(&to_monotone_cnf(h)).expect("count").count
        })
        .count();
    Check { name: "brute_counts", pass: bad == 0, detail: format!("{} instances, {bad} mismatches", corpus.len()) }
}

fn approx(runs: u64) -> Check {
    let h = gen_hypergraph(16, 4, 2, 1).expect("instance");
    let truth = brute_count_indsets(&h).expect("count").count as f64;
    let within = (0..runs)
        .filter(|&s| {
            let r = approx_count_indsets(&h, 0.1, 0.1, s).expect("approx count");
            (r.estimate - truth).abs() <= 0.1 * truth
        })
        .count() as u64;
    Check {
        name: "approx_count",
        pass: within * 10 >= runs * 9,
        detail: format!("{within}/{runs} within 10% of {truth}"),
    }
}

fn multicolour(seeds: u64, reps: u64) -> Check {
    let mut ratios = Vec::new();
    let mut ok = true;
    for seed in 0..seeds {
        let g = gen_bipartite(20, 20, 9, seed).expect("instance");
        let Some((x, y)) = input::bipartite_pair(&g, 17, &RandomSource::new(seed)) else { continue };
        let rep = mc_drift_multicolour(&g, &x, &y, reps, seed).expect("drift");
        ok &= rep.pass;
        ratios.push(format!("{:.3}/{:.3}", rep.d1 / rep.d0, rep.bound / rep.d0));
    }
    Check { name: "multicolour_contraction", pass: ok, detail: ratios.join(" ") }
}

fn stopping(reps: u64) -> Check {
    let h = (1..).find_map(|s| gen_hypergraph(16, 4, 2, s).ok()).expect("instance");
    let sys = IndsetSystem::new(&h, StopMetric::Hamming).expect("system");
    let pairs: Vec<_> = (0..5).filter_map(|p| input::indset_pair(&h, &RandomSource::new(3).child(p))).collect();
    let k = 16;
    let st = estimate_alpha_p(&sys, &pairs, k, reps, 7, None).expect("estimate");
    let tail = tail_bound_check(&sys, &pairs, k, st.p_min, 5 * k, reps, 13).expect("tail");
    Check {
        name: "stopping_times",
        pass: st.alpha_upper < 1.0 && tail.pass,
        detail: format!(
            "α̂ = {:.3} (upper {:.3}), p_min = {:.3}, tail {}",
            st.alpha_hat, st.alpha_upper, st.p_min, tail.pass
        ),
    }
}

fn table1(precision: usize) -> Check {
    let mut misses = Vec::new();
    for (&d, &want) in TABLE1_DEGREES.iter().zip(&TABLE1_Q) {
        let got = min_q_for_contraction(d, precision, AlphaPrimeV::Printed).ok().and_then(|m| m.q);
        if got != Some(want) {
            misses.push(format!("Δ={d}: {} vs {want}", got.map_or("none".to_string(), |q| q.to_string())));
        }
    }
    Check {
        name: "table1",
        pass: misses.is_empty(),
        detail: format!("{}/43 rows; {}", 43 - misses.len(), misses.join("; ")),
    }
}

fn f_thresholds() -> Check {
    let mut bad = Vec::new();
    for d in 3..=14u64 {
        let m = (2..64usize).find(|&m| f_threshold(m).expect("f(m)") > int(d)).expect("threshold");
        if m as u64 != d + 2 {
            bad.push(format!("Δ={d}: m={m}"));
        }
    }
    Check { name: "f_thresholds", pass: bad.is_empty(), detail: format!("mismatches {bad:?}") }
}

pub fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Report, Failure> {
    type Job<'a> = Box<dyn Fn() -> Check + 'a>;
    let p = cli.precision;
    let mut jobs: Vec<Job> = vec![
        Box::new(weight_systems),
        Box::new(move || beta(p)),
        Box::new(kernels),
        Box::new(|| indset_drift(200)),
        Box::new(|| counting(14)),
        Box::new(|| multicolour(3, 10_000)),
        Box::new(|| stopping(1000)),
    ];
    if a.suite == Suite::Full {
        jobs = vec![
            Box::new(weight_systems),
            Box::new(move || beta(p)),
            Box::new(move || table1(p)),
            Box::new(f_thresholds),
            Box::new(kernels),
            Box::new(|| indset_drift(200)),
            Box::new(|| tricol_drift(200)),
            Box::new(|| counting(18)),
            Box::new(|| approx(50)),
            Box::new(|| multicolour(3, 10_000)),
            Box::new(|| stopping(2000)),
        ];
    }
    let mut rows = Vec::new();
    let mut body = Vec::new();
    let mut failed = false;
    for job in &jobs {
        let t = Instant::now();
        let c = job();
        let secs = t.elapsed().as_secs_f64();
        failed |= !c.pass;
        body.push(json!({"check": c.name, "pass": c.pass, "seconds": secs, "detail": c.detail}));
        rows.push(vec![c.name.to_string(), c.pass.to_string(), format!("{secs:.2}"), c.detail]);
    }
    Ok(Report::new(
        json!({"suite": a.suite, "passed": !failed, "checks": body}),
        &["check", "pass", "seconds", "detail"],
        rows,
    )
    .failed(failed))
}
