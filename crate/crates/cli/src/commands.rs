use serde_json::{json, Value};

use pathcoupling::analysis::{
    bip_bounds, f_threshold, indset_weights, min_q_for_contraction, solve_beta, tricol_weights,
    verify_indset_recurrence, verify_tricol_system, AlphaPrimeV,
};
use pathcoupling::chains::{glauber_indset_step, glauber_tricol_step, multicolour_step, scan_step};
use pathcoupling::counting::{
    approx_count_indsets, approx_count_sat, brute_count_colourings, brute_count_indsets, brute_count_sat,
};
use pathcoupling::coupling::{
    estimate_alpha_p, exact_onestep_drift_indset, exact_onestep_drift_tricol, mc_drift_multicolour,
    replay_contraction_check, tail_bound_check, CoupledSystem, DriftReport, IndsetSystem, MulticolourSystem,
    ScanSystem, StopMetric, TricolSystem,
};
use pathcoupling::instances::{ColouringState, OccupancyState, Side};
use pathcoupling::{format_rational, RandomSource, Rational};

use crate::input::{self, CountInput};
use crate::report::Report;
use crate::{
    ChainArg, Cli, CountArgs, CountMode, DriftArgs, Failure, Family, MetricArg, SimulateArgs, StoppingArgs, TableKind,
    TablesArgs, Variant, WeightsArgs,
};

/// Degrees listed in the minimum palette table.
pub const TABLE1_DEGREES: [u64; 43] = [
    9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33, 34, 35, 36, 37,
    38, 39, 40, 41, 42, 43, 44, 45, 46, 47, 48, 49, 50, 10000,
];

fn variant(v: Variant) -> AlphaPrimeV {
    match v {
        Variant::Printed => AlphaPrimeV::Printed,
        Variant::Symmetric => AlphaPrimeV::Symmetric,
    }
}

fn invalid<E: std::fmt::Display>(e: E) -> Failure {
    Failure::invalid(e)
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn tables(cli: &Cli, a: &TablesArgs) -> Result<Report, Failure> {
    match a.what {
        TableKind::Table1 => {
            let mut rows = Vec::new();
            let mut body = Vec::new();
            for &d in &TABLE1_DEGREES {
                let q = min_q_for_contraction(d, cli.precision, variant(a.variant))
                    .map_err(invalid)?
                    .q
                    .ok_or_else(|| Failure::invalid(format!("no contracting q found for Δ = {d}")))?;
                let cap = (11 * d).div_ceil(6);
                let ratio = format!("{:.2}", q as f64 / d as f64);
                body.push(json!({"delta": d, "q": q, "ceil_11_delta_6": cap, "q_over_delta": ratio}));
                rows.push(vec![d.to_string(), q.to_string(), cap.to_string(), ratio]);
            }
            Ok(Report::new(
                json!({"table": "table1", "variant": a.variant, "rows": body}),
                &["delta", "q", "ceil_11delta_6", "q_over_delta"],
                rows,
            ))
        }
        TableKind::F => {
            let mut rows = Vec::new();
            let mut body = Vec::new();
            for m in 2..=a.max_m.max(2) {
                let f = f_threshold(m).map_err(invalid)?;
                let fs = format_rational(&f);
                let approx = pathcoupling::rational_to_f64(&f);
                // largest Δ with f(m) > Δ
                let floor = f.floor().to_integer();
                let largest = if Rational::from_integer(floor.clone()) == f { floor - 1 } else { floor };
                body.push(json!({"m": m, "f": fs, "f_decimal": approx, "largest_delta": largest.to_string()}));
                rows.push(vec![m.to_string(), fs, format!("{approx:.6}"), largest.to_string()]);
            }
            Ok(Report::new(json!({"table": "f", "rows": body}), &["m", "f", "f_decimal", "largest_delta"], rows))
        }
        TableKind::Beta => {
            let b = solve_beta(cli.precision.max(50));
            let s = b.to_decimal(cli.precision.max(50));
            Ok(Report::new(
                json!({"table": "beta", "beta": s, "beta_f64": b.to_f64()}),
                &["quantity", "value"],
                vec![vec!["beta".into(), s]],
            ))
        }
    }
}

pub fn weights(cli: &Cli, a: &WeightsArgs) -> Result<Report, Failure> {
    let d = a.max_degree;
    match a.family {
        Family::Indset => {
            let m = a.m.ok_or_else(|| Failure::invalid("indset weights need -m"))?;
            let w = indset_weights(m, d as usize).map_err(invalid)?;
            let v = verify_indset_recurrence(&w);
            let c = rats(&w.c);
            let gamma = format_rational(&w.gamma);
            let mut rows = vec![vec!["gamma".into(), gamma.clone()]];
            rows.extend(c.iter().enumerate().map(|(i, x)| vec![format!("c{i}"), x.clone()]));
            Ok(Report::new(
                json!({"family": "indset", "m": m, "max_degree": d, "gamma": gamma, "c": c,
                       "contracts": w.contracts, "verified": v.passed(), "failures": v.failures}),
                &["name", "value"],
                rows,
            ))
        }
        Family::Tricol => {
            let q = a.q.ok_or_else(|| Failure::invalid("colouring weights need -q"))?;
            let w = tricol_weights(q, d).map_err(invalid)?;
            let v = verify_tricol_system(&w);
            let c = rats(&w.c);
            let gamma = format_rational(&w.gamma);
            let mut rows = vec![vec!["gamma".into(), gamma.clone()]];
            rows.extend(c.iter().enumerate().map(|(i, x)| vec![format!("c{i}"), x.clone()]));
            let pre = pathcoupling::analysis::tricol_mixing_prefactor(q, d).map_err(invalid)?;
            rows.push(vec!["mixing_prefactor".into(), format_rational(&pre)]);
            Ok(Report::new(
                json!({"family": "tricol", "q": q, "max_degree": d, "gamma": gamma, "c": c,
                       "contracts": w.contracts, "mixing_prefactor": format_rational(&pre),
                       "verified": v.passed(), "failures": v.failures}),
                &["name", "value"],
                rows,
            ))
        }
        Family::Bipartite => {
            let q = a.q.ok_or_else(|| Failure::invalid("bipartite bounds need -q"))?;
            let b = bip_bounds(q, d, cli.precision, variant(a.variant)).map_err(invalid)?;
            let digits = 20;
            let fields = [
                ("alpha", b.alpha.to_decimal(digits)),
                ("alpha_prime", b.alpha_prime.to_decimal(digits)),
                ("alpha_v", b.alpha_v.to_decimal(digits)),
                ("alpha_prime_v", b.alpha_prime_v.to_decimal(digits)),
                ("b", b.b.to_decimal(digits)),
                ("contraction_factor", b.contraction_factor.to_decimal(digits)),
            ];
            let mut obj = serde_json::Map::new();
            obj.insert("family".into(), json!("bipartite"));
            obj.insert("q".into(), json!(q));
            obj.insert("max_degree".into(), json!(d));
            obj.insert("variant".into(), json!(a.variant));
            for (k, v) in &fields {
                obj.insert(k.to_string(), json!(v));
            }
            obj.insert("contracts".into(), json!(b.contracts()));
            obj.insert("error_bound".into(), json!(b.error_bound));
            let mut rows: Vec<Vec<String>> = fields.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
            rows.push(vec!["contracts".into(), b.contracts().to_string()]);
            Ok(Report::new(Value::Object(obj), &["name", "value"], rows))
        }
    }
}

fn colour_list(s: &ColouringState) -> Vec<u32> {
    s.colours().iter().map(|c| c + 1).collect()
}

fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn simulate(cli: &Cli, a: &SimulateArgs) -> Result<Report, Failure> {
    let r = RandomSource::new(cli.seed);
    let every = a.every.max(1);
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut record = |t: u64, summary: usize, state: Vec<u32>| {
        rows.push(vec![t.to_string(), summary.to_string(), joined(&state)]);
        records.push(json!({"step": t, "summary": summary, "state": state}));
    };
    let summary_name = match a.chain {
        ChainArg::Indset => "size",
        _ => "distinct_colours",
    };
    let distinct = |s: &ColouringState| {
        let mut c = s.colours().to_vec();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    match a.chain {
        ChainArg::Indset => {
            let h = input::hypergraph(&a.instance)?;
            let mut s = OccupancyState::empty(h.vertex_count());
            for t in 0..=a.steps {
                if t % every == 0 || t == a.steps {
                    record(t, s.size(), s.members().map(|v| v as u32 + 1).collect());
                }
                if t < a.steps {
                    s = glauber_indset_step(&h, &s, &r, t).0;
                }
            }
        }
        ChainArg::Tricol => {
            let h = input::hypergraph(&a.instance)?;
            let q = input::palette(a.q)?;
            if q as usize <= h.max_degree() + 1 {
                return Err(Failure::invalid(format!("palette {q} must exceed Δ + 1 = {}", h.max_degree() + 1)));
            }
            let mut s = ColouringState::greedy_hypergraph(&h, q)
                .ok_or_else(|| Failure::invalid("no greedy proper colouring with this palette"))?;
            for t in 0..=a.steps {
                if t % every == 0 || t == a.steps {
                    record(t, distinct(&s), colour_list(&s));
                }
                if t < a.steps {
                    s = glauber_tricol_step(&h, &s, &r, t).0;
                }
            }
        }
        ChainArg::Multicolour | ChainArg::Scan => {
            let g = input::bipartite(&a.instance)?;
            let q = input::palette(a.q)?;
            if q as usize <= g.max_degree() {
                return Err(Failure::invalid(format!("palette {q} must exceed Δ = {}", g.max_degree())));
            }
            let mut s = ColouringState::greedy_graph(&g, q)
                .ok_or_else(|| Failure::invalid("no greedy proper colouring with this palette"))?;
            for t in 0..=a.steps {
                if t % every == 0 || t == a.steps {
                    record(t, distinct(&s), colour_list(&s));
                }
                if t < a.steps {
                    s = if a.chain == ChainArg::Scan {
                        scan_step(&g, &s, &r, t, Side::First).0
                    } else {
                        multicolour_step(&g, &s, &r, t).0
                    };
                }
            }
        }
    }
    Ok(Report::new(
        json!({"chain": a.chain, "steps": a.steps, "summary": summary_name, "records": records}),
        &["step", summary_name, "state"],
        rows,
    ))
}

fn drift_json(i: usize, w: usize, rep: &DriftReport) -> Value {
    let exact = rep.exact.as_ref().map(|e| {
        json!({
            "d0": format_rational(&e.d0),
            "d1": format_rational(&e.d1),
            "bound": format_rational(&e.bound),
            "slack": format_rational(&e.slack),
            "profile_bound": e.profile_bound.as_ref().map(format_rational),
        })
    });
    json!({"pair": i, "w": w + 1, "d0": rep.d0, "d1": rep.d1, "uncertainty": rep.uncertainty,
           "bound": rep.bound, "pass": rep.pass, "samples": rep.samples, "exact": exact})
}

pub fn drift(cli: &Cli, a: &DriftArgs) -> Result<Report, Failure> {
    let root = RandomSource::new(cli.seed);
    let mut out = Vec::new();
    let mut rows = Vec::new();
    let mut push = |i: usize, w: usize, rep: DriftReport| {
        rows.push(vec![
            i.to_string(),
            (w + 1).to_string(),
            rep.d0.to_string(),
            rep.d1.to_string(),
            rep.uncertainty.to_string(),
            rep.bound.to_string(),
            rep.pass.to_string(),
        ]);
        out.push(drift_json(i, w, &rep));
    };
    let first_diff = |a: &[u32], b: &[u32]| (0..a.len()).find(|&i| a[i] != b[i]).unwrap_or(0);
    match a.chain {
        ChainArg::Indset => {
            let h = input::hypergraph(&a.instance)?;
            let m = h.min_edge_size().ok_or_else(|| Failure::invalid("hypergraph has no edges"))?;
            let w = indset_weights(m, h.max_degree()).map_err(invalid)?;
            for i in 0..a.pairs {
                let Some((x, y)) = input::indset_pair(&h, &root.child(i as u64)) else { continue };
                let v = x.differences(&y).next().unwrap_or(0);
                push(i, v, exact_onestep_drift_indset(&h, &x, &y, &w).map_err(invalid)?);
            }
        }
        ChainArg::Tricol => {
            let h = input::hypergraph(&a.instance)?;
            let q = input::palette(a.q)?;
            let w = tricol_weights(u64::from(q), h.max_degree() as u64).map_err(invalid)?;
            for i in 0..a.pairs {
                let Some((x, y)) = input::tricol_pair(&h, q, &root.child(i as u64)) else { continue };
                let v = first_diff(x.colours(), y.colours());
                push(i, v, exact_onestep_drift_tricol(&h, &x, &y, &w).map_err(invalid)?);
            }
        }
        ChainArg::Multicolour => {
            let g = input::bipartite(&a.instance)?;
            let q = input::palette(a.q)?;
            for i in 0..a.pairs {
                let Some((x, y)) = input::bipartite_pair(&g, q, &root.child(i as u64)) else { continue };
                let v = first_diff(x.colours(), y.colours());
                let seed = root.child(i as u64).seed();
                push(i, v, mc_drift_multicolour(&g, &x, &y, a.reps, seed).map_err(invalid)?);
            }
        }
        ChainArg::Scan => return Err(Failure::invalid("drift is defined for indset, tricol and multicolour")),
    }
    if out.is_empty() {
        return Err(Failure::invalid("no adjacent pair with a positive-degree change vertex was found"));
    }
    let failed = out.iter().any(|r| r["pass"] == json!(false));
    Ok(Report::new(
        json!({"chain": a.chain, "pairs": out}),
        &["pair", "w", "d0", "d1", "uncertainty", "bound", "pass"],
        rows,
    )
    .failed(failed))
}

fn stop_metric(m: MetricArg) -> StopMetric {
    match m {
        MetricArg::Hamming => StopMetric::Hamming,
        MetricArg::Weighted => StopMetric::Weighted,
    }
}

fn run_stopping<C: CoupledSystem>(
    cli: &Cli,
    a: &StoppingArgs,
    sys: &C,
    pairs: Vec<(C::State, C::State)>,
) -> Result<Report, Failure> {
    if pairs.is_empty() {
        return Err(Failure::invalid("no adjacent pair with a positive-degree change vertex was found"));
    }
    let k = a.k.unwrap_or(sys.vertex_count() as u64).max(1);
    let horizon = a.horizon.unwrap_or(5 * k);
    let st = estimate_alpha_p(sys, &pairs, k, a.reps, cli.seed, None).map_err(invalid)?;
    let tail = tail_bound_check(sys, &pairs, k, st.p_min, horizon, a.reps, cli.seed ^ 0x7461_696c).map_err(invalid)?;
    let replay = if a.replay {
        let l = replay_contraction_check(
            sys,
            &pairs[0].0,
            &pairs[0].1,
            st.alpha_max,
            k,
            a.reps,
            200,
            cli.seed ^ 0x6c65_6d6d,
        )
        .map_err(invalid)?;
        Some(json!({"alpha": l.alpha, "d_prime0": l.d_prime0, "p_hat": l.p_hat, "lhs": l.lhs,
                    "lhs_stderr": l.lhs_stderr, "rhs": l.rhs, "pass": l.pass}))
    } else {
        None
    };
    let per_pair: Vec<Value> = st
        .per_pair
        .iter()
        .map(|p| {
            json!({"d0": p.d0, "alpha": p.alpha, "alpha_stderr": p.alpha_stderr, "p": p.p,
                        "mean_d_t": p.mean_d_t, "d_prime": p.d_prime, "censored": p.censored})
        })
        .collect();
    let points: Vec<Value> = tail
        .points
        .iter()
        .map(|p| json!({"t": p.t, "empirical": p.empirical, "stderr": p.stderr, "bound": p.bound, "pass": p.pass}))
        .collect();
    let rows = tail
        .points
        .iter()
        .map(|p| {
            vec![
                p.t.to_string(),
                p.empirical.to_string(),
                p.stderr.to_string(),
                p.bound.to_string(),
                p.pass.to_string(),
            ]
        })
        .collect();
    let replay_ok = replay.as_ref().is_none_or(|l| l["pass"] == json!(true));
    let failed = st.alpha_upper >= 1.0 || !tail.pass || !replay_ok;
    Ok(Report::new(
        json!({
            "chain": a.chain, "metric": a.metric, "k": k, "cap": st.cap, "samples": st.samples,
            "alpha_hat": st.alpha_hat, "alpha_stderr": st.alpha_stderr, "alpha_upper": st.alpha_upper,
            "alpha_max": st.alpha_max, "p_hat": st.p_hat, "p_lower": st.p_lower, "p_min": st.p_min,
            "censored": st.censored, "d_prime": st.d_prime, "per_pair": per_pair,
            "tail": {"horizon": horizon, "pass": tail.pass, "points": points},
            "replay": replay,
        }),
        &["t", "tail", "stderr", "bound", "pass"],
        rows,
    )
    .failed(failed))
}

pub fn stopping(cli: &Cli, a: &StoppingArgs) -> Result<Report, Failure> {
    let root = RandomSource::new(cli.seed).child(0x7061_6972);
    let metric = stop_metric(a.metric);
    match a.chain {
        ChainArg::Indset => {
            let h = input::hypergraph(&a.instance)?;
            let sys = IndsetSystem::new(&h, metric).map_err(invalid)?;
            let pairs = (0..a.pairs).filter_map(|i| input::indset_pair(&h, &root.child(i as u64))).collect();
            run_stopping(cli, a, &sys, pairs)
        }
        ChainArg::Tricol => {
            let h = input::hypergraph(&a.instance)?;
            let q = input::palette(a.q)?;
            let sys = TricolSystem::new(&h, q, metric).map_err(invalid)?;
            let pairs = (0..a.pairs).filter_map(|i| input::tricol_pair(&h, q, &root.child(i as u64))).collect();
            run_stopping(cli, a, &sys, pairs)
        }
        ChainArg::Multicolour | ChainArg::Scan => {
            let g = input::bipartite(&a.instance)?;
            let q = input::palette(a.q)?;
            let pairs = (0..a.pairs).filter_map(|i| input::bipartite_pair(&g, q, &root.child(i as u64))).collect();
            if a.chain == ChainArg::Scan {
                run_stopping(cli, a, &ScanSystem { g: &g, palette: q, metric }, pairs)
            } else {
                run_stopping(cli, a, &MulticolourSystem { g: &g, palette: q, metric }, pairs)
            }
        }
    }
}

pub fn count(cli: &Cli, a: &CountArgs) -> Result<Report, Failure> {
    let input = input::count_input(&a.instance)?;
    match (a.mode, input) {
        (CountMode::Brute, inp) => {
            let (what, res) = match (inp, a.q) {
                (CountInput::Hypergraph(h), Some(q)) => ("colourings", brute_count_colourings(&h, q)),
                (CountInput::Hypergraph(h), None) => ("independent_sets", brute_count_indsets(&h)),
                (CountInput::Cnf(f), None) => ("satisfying_assignments", brute_count_sat(&f)),
                (CountInput::Cnf(_), Some(_)) => return Err(Failure::invalid("-q applies to hypergraph input only")),
            };
            let res = res.map_err(invalid)?;
            Ok(Report::new(
                json!({"mode": "brute", "quantity": what, "count": res.count, "visited": res.visited}),
                &["quantity", "count", "visited"],
                vec![vec![what.into(), res.count.to_string(), res.visited.to_string()]],
            ))
        }
        (CountMode::Approx, inp) => {
            if a.q.is_some() {
                return Err(Failure::invalid("approximate counting of colourings is not supported"));
            }
            let res = match inp {
                CountInput::Hypergraph(h) => approx_count_indsets(&h, a.epsilon, a.delta, cli.seed),
                CountInput::Cnf(f) => approx_count_sat(&f, a.epsilon, a.delta, cli.seed),
            }
            .map_err(invalid)?;
            let mut rows: Vec<Vec<String>> =
                res.levels.iter().enumerate().map(|(i, r)| vec![(i + 1).to_string(), r.to_string()]).collect();
            rows.push(vec!["estimate".into(), res.estimate.to_string()]);
            let mut body = serde_json::to_value(&res).expect("serialisable");
            body["mode"] = json!("approx");
            Ok(Report::new(body, &["level", "ratio"], rows))
        }
    }
}
