use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use repzeta::arith::{dirichlet_from_pairs, global_coeffs_from_local, quotient_pairs};
use repzeta::counting::{
    admissible_types, count_type_closed, local_zeta_truncation_oracle, profile_histogram, rank_count_closed,
    rank_count_enumerate, target_profile, MatrixSpaceKind,
};
use repzeta::igusa::{
    closed_coeffs, igusa_closed, igusa_coeff_oracle, pvs_pole_set, verify_bs_candidates, verify_pole_translation,
    verify_sym_alt_relation, PvsKind,
};
use repzeta::qalg::{rat_equal, verify_identity, IdentityKind, SubsetIndex};
use repzeta::schemes::{
    check_functional_equation, check_h_reduction, local_coefficients, local_zeta_additive, local_zeta_multiplicative,
    pole_set, pole_set_from_denominator, product_form, Family, GroupScheme,
};
use repzeta::weyl::{
    all_stats, conjecture_l_report, length_oracle_bfs, stats, verify_f_formulas_from, verify_joint_distribution_b,
    verify_reiner_from, verify_sn_distribution,
};

use crate::report::{big, bigs, rational, rational64, Outcome, Report};
use crate::{Cli, Command, PvsArg, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] repzeta::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Lib(repzeta::Error::Domain(_) | repzeta::Error::Parse { .. }) => 2,
            CliError::Lib(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn need<T: Copy>(v: Option<T>, flag: &str, cmd: &str) -> Result<T> {
    v.ok_or_else(|| CliError::Usage(format!("{cmd} needs --{flag}")))
}

fn prime(p: u64) -> Result<u64> {
    if p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
        Ok(p)
    } else {
        Err(CliError::Usage(format!("--p must be a prime, got {p}")))
    }
}

fn scheme(cli: &Cli, cmd: &str) -> Result<GroupScheme> {
    let s = &cli.shared;
    let family: Family =
        s.family.as_deref().ok_or_else(|| CliError::Usage(format!("{cmd} needs --family")))?.parse()?;
    let n = need(s.n, "n", cmd)?;
    let delta = s.delta.unwrap_or(0);
    if family != Family::F && delta != 0 {
        return Err(CliError::Usage("--delta applies to family F only".into()));
    }
    Ok(GroupScheme::new(family, n, delta)?)
}

fn scheme_inputs(g: &GroupScheme) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("family".into(), json!(g.family.to_string()));
    m.insert("n".into(), json!(g.n));
    m.insert("delta".into(), json!(g.delta));
    m
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::LocalZeta => local_zeta(cli),
        Command::GlobalCoeffs => global_coeffs(cli),
        Command::Verify { suite, max_n } => verify(*suite, *max_n),
        Command::WeylStats => weyl_stats(cli),
        Command::ConjectureL => conjecture(cli),
        Command::Counts => counts(cli),
        Command::Igusa { kind } => igusa(cli, *kind),
    }
}

fn local_zeta(cli: &Cli) -> Result<Report> {
    let g = scheme(cli, "local-zeta")?;
    let mut inputs = scheme_inputs(&g);
    let z = local_zeta_multiplicative(&g);
    let agrees = rat_equal(&local_zeta_additive(&g)?, &z);
    let fe = check_functional_equation(&g)?;
    let mut payload = Map::new();
    payload.insert("label".into(), json!(g.label()));
    payload.insert("local_zeta".into(), json!(z.to_string()));
    payload.insert("product_form".into(), json!(product_form(&g).to_string()));
    payload.insert("additive_agrees".into(), json!(agrees));
    payload.insert("functional_equation".into(), json!(fe));
    payload.insert("d".into(), json!(g.d_rank()));
    payload.insert("abscissa".into(), json!(g.alpha()));
    payload.insert("poles".into(), Value::Array(pole_set(&g).iter().map(rational64).collect()));
    if let Some(q) = cli.shared.q {
        let order = cli.shared.order.unwrap_or(6);
        inputs.insert("q".into(), json!(q));
        inputs.insert("order".into(), json!(order));
        payload.insert("coefficients".into(), bigs(&local_coefficients(&g, q, order)?));
    }
    Ok(Report {
        command: "local-zeta",
        inputs,
        outcome: Outcome::from_checks(agrees && fe),
        payload: Value::Object(payload),
    })
}

fn global_coeffs(cli: &Cli) -> Result<Report> {
    let g = scheme(cli, "global-coeffs")?;
    let bound = cli.shared.bound.unwrap_or(20);
    let mut inputs = scheme_inputs(&g);
    inputs.insert("bound".into(), json!(bound));
    let c = global_coeffs_from_local(&g, bound)?;
    Ok(Report { command: "global-coeffs", inputs, outcome: Outcome::Report, payload: bigs(&c.coeffs) })
}

fn weyl_stats(cli: &Cli) -> Result<Report> {
    let n = need(cli.shared.n, "n", "weyl-stats")?;
    let rows = all_stats(n)?;
    Ok(Report {
        command: "weyl-stats",
        inputs: Map::from_iter([("n".to_string(), json!(n))]),
        outcome: Outcome::Report,
        payload: serde_json::to_value(rows).expect("plain data"),
    })
}

fn conjecture(cli: &Cli) -> Result<Report> {
    let n = need(cli.shared.n, "n", "conjecture-L")?;
    let rows = conjecture_l_report(n)?;
    let ok = rows.iter().all(|r| !r.proved || r.matches);
    Ok(Report {
        command: "conjecture-L",
        inputs: Map::from_iter([("n".to_string(), json!(n))]),
        outcome: Outcome::from_checks(ok),
        payload: serde_json::to_value(rows).expect("plain data"),
    })
}

fn counts(cli: &Cli) -> Result<Report> {
    let g = scheme(cli, "counts")?;
    let p = prime(need(cli.shared.p, "p", "counts")?)?;
    let order = cli.shared.order.unwrap_or(2);
    let mut inputs = scheme_inputs(&g);
    inputs.insert("p".into(), json!(p));
    inputs.insert("order".into(), json!(order));
    let mut rows = Vec::new();
    let mut ok = true;
    for cap in 0..=order as u32 {
        let hist = profile_histogram(&g, p, cap)?;
        for (idx, r) in admissible_types(g.n, cap) {
            let profile = target_profile(&idx, &r);
            let closed = count_type_closed(&g, &idx, &r, p)?;
            let seen = BigInt::from(hist.get(&profile).copied().unwrap_or(0));
            ok &= closed == seen;
            rows.push(json!({
                "subset": idx.to_string(),
                "r": r,
                "profile": profile,
                "closed": big(&closed),
                "enumerated": big(&seen),
                "match": closed == seen,
            }));
        }
    }
    let oracle = local_zeta_truncation_oracle(&g, p, order)?;
    let series = local_coefficients(&g, p, order)?;
    ok &= oracle == series;
    Ok(Report {
        command: "counts",
        inputs,
        outcome: Outcome::from_checks(ok),
        payload: json!({
            "types": rows,
            "truncation": {"oracle": bigs(&oracle), "series": bigs(&series), "match": oracle == series},
        }),
    })
}

fn pvs_kind(arg: PvsArg, n: usize) -> Result<PvsKind> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    Ok(match arg {
        PvsArg::Alt => PvsKind::new_alt(2 * n)?,
        PvsArg::Mat => PvsKind::MatDet(n),
        PvsArg::Sym => PvsKind::SymDet(n),
    })
}

fn igusa(cli: &Cli, arg: PvsArg) -> Result<Report> {
    let n = need(cli.shared.n, "n", "igusa")?;
    let kind = pvs_kind(arg, n)?;
    let p = prime(cli.shared.p.unwrap_or(3))?;
    let order = cli.shared.order.unwrap_or(2);
    let closed = closed_coeffs(kind, p, order);
    let assert_rows = !(matches!(kind, PvsKind::SymDet(_)) && p == 2);
    let mut ok = true;
    let mut rows = Vec::new();
    for (k, c) in closed.iter().enumerate() {
        let row = match igusa_coeff_oracle(kind, p, k as u32) {
            Ok(o) => {
                ok &= !assert_rows || o == *c;
                json!({"kind": kind.to_string(), "p": p, "k": k, "oracle": rational(&o),
                       "closed_coeff": rational(c), "match": o == *c})
            }
            Err(repzeta::Error::Resource { .. }) => json!({"kind": kind.to_string(), "p": p, "k": k,
                "oracle": null, "closed_coeff": rational(c), "match": null}),
            Err(e) => return Err(e.into()),
        };
        rows.push(row);
    }
    let mut inputs = Map::new();
    inputs.insert("kind".into(), json!(kind.to_string()));
    inputs.insert("p".into(), json!(p));
    inputs.insert("order".into(), json!(order));
    Ok(Report {
        command: "igusa",
        inputs,
        outcome: if assert_rows { Outcome::from_checks(ok) } else { Outcome::Report },
        payload: json!({
            "closed": igusa_closed(kind).to_string(),
            "poles": pvs_pole_set(kind).iter().map(rational64).collect::<Vec<_>>(),
            "rows": rows,
        }),
    })
}

struct Checks {
    rows: Vec<Value>,
    failed: bool,
}

impl Checks {
    fn record(&mut self, suite: &str, name: String, result: repzeta::Result<bool>) {
        let (outcome, detail) = match result {
            Ok(true) => ("pass", String::new()),
            Ok(false) => ("fail", String::new()),
            Err(e @ repzeta::Error::Resource { .. }) => ("skip", e.to_string()),
            Err(e) => ("fail", e.to_string()),
        };
        self.failed |= outcome == "fail";
        self.rows.push(json!({"suite": suite, "check": name, "outcome": outcome, "detail": detail}));
    }
}

fn verify(suite: Suite, max_n: usize) -> Result<Report> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be positive".into()));
    }
    let mut c = Checks { rows: Vec::new(), failed: false };
    let on = |s: Suite| suite == Suite::All || suite == s;
    if on(Suite::Identities) {
        for kind in IdentityKind::ALL {
            for n in 1..=max_n.clamp(5, 8) {
                c.record("identities", format!("{} n={n}", kind.name()), verify_identity(kind, n));
            }
        }
    }
    if on(Suite::Schemes) {
        for g in GroupScheme::all_up_to(max_n) {
            let eq = local_zeta_additive(&g).map(|a| rat_equal(&a, &local_zeta_multiplicative(&g)));
            c.record("schemes", format!("{g} additive = multiplicative"), eq);
            c.record("schemes", format!("{g} functional equation"), check_functional_equation(&g));
            c.record("schemes", format!("{g} poles"), Ok(pole_set(&g) == pole_set_from_denominator(&g)));
        }
        for n in 1..=max_n {
            c.record("schemes", format!("H_{n} from F"), check_h_reduction(n));
        }
    }
    if on(Suite::Weyl) {
        for n in 1..=max_n.min(5) {
            let records = all_stats(n)?;
            let reiner = SubsetIndex::all(n).all(|i| verify_reiner_from(&records, &i));
            c.record("weyl", format!("Reiner n={n}"), Ok(reiner));
            for delta in 0..=1 {
                let f = SubsetIndex::all(n)
                    .map(|i| verify_f_formulas_from(&records, delta, &i))
                    .collect::<repzeta::Result<Vec<bool>>>()
                    .map(|v| v.into_iter().all(|b| b));
                c.record("weyl", format!("type F n={n} delta={delta}"), f);
            }
            c.record("weyl", format!("joint distribution B n={n}"), verify_joint_distribution_b(n));
            c.record("weyl", format!("S_n distribution n={n}"), verify_sn_distribution(n));
            if n <= 4 {
                let bfs = length_oracle_bfs(n).map(|m| m.iter().all(|(w, l)| stats(w).length == *l));
                c.record("weyl", format!("length by BFS n={n}"), bfs);
            }
            let proved = conjecture_l_report(n).map(|rows| rows.iter().all(|r| !r.proved || r.matches));
            c.record("weyl", format!("statistic L proved cases n={n}"), proved);
        }
    }
    if on(Suite::Counting) {
        for q in [2u64, 3] {
            for k in 1..=max_n {
                for space in [MatrixSpaceKind::Alt(2 * k), MatrixSpaceKind::Mat(k), MatrixSpaceKind::Sym(k)] {
                    let check = rank_count_enumerate(space, q as usize).and_then(|hist| {
                        (0..=space.half()).try_fold(true, |acc, i| {
                            let seen = hist.get(&space.rank_of_index(i)).copied().unwrap_or(0);
                            Ok(acc && rank_count_closed(space, i, q)? == BigInt::from(seen))
                        })
                    });
                    c.record("counting", format!("ranks {space} q={q}"), check);
                }
            }
        }
        for g in GroupScheme::all_up_to(max_n.min(2)) {
            for p in [2u64, 3] {
                let check = local_zeta_truncation_oracle(&g, p, 2).and_then(|o| Ok(o == local_coefficients(&g, p, 2)?));
                c.record("counting", format!("{g} truncation p={p}"), check);
            }
        }
    }
    if on(Suite::Igusa) {
        let kinds = [
            PvsKind::AltPfaffian(2),
            PvsKind::AltPfaffian(4),
            PvsKind::MatDet(1),
            PvsKind::MatDet(2),
            PvsKind::SymDet(1),
            PvsKind::SymDet(2),
        ];
        for kind in kinds {
            let ps: &[u64] = if matches!(kind, PvsKind::SymDet(_)) { &[3] } else { &[2, 3] };
            for &p in ps {
                let closed = closed_coeffs(kind, p, 2);
                let check = (0..=2u32)
                    .try_fold(true, |acc, k| Ok(acc && igusa_coeff_oracle(kind, p, k)? == closed[k as usize]));
                c.record("igusa", format!("{kind} p={p}"), check);
            }
        }
        for n in 1..=max_n {
            c.record("igusa", format!("Sym/Alt relation n={n}"), verify_sym_alt_relation(n));
            c.record("igusa", format!("b-function candidates n={n}"), verify_bs_candidates(n));
        }
        for g in GroupScheme::all_up_to(max_n) {
            c.record("igusa", format!("{g} pole translation"), Ok(verify_pole_translation(&g)));
        }
    }
    if on(Suite::Arith) {
        for g in GroupScheme::all_up_to(max_n) {
            let check = global_coeffs_from_local(&g, 200)
                .map(|local| local.is_multiplicative() && local == dirichlet_from_pairs(&quotient_pairs(&g), 200));
            c.record("arith", format!("{g} two routes to 200"), check);
        }
    }
    let passed = c.rows.iter().filter(|r| r["outcome"] == "pass").count();
    let inputs = Map::from_iter([
        ("suite".to_string(), json!(format!("{suite:?}").to_lowercase())),
        ("max_n".to_string(), json!(max_n)),
    ]);
    Ok(Report {
        command: "verify",
        inputs,
        outcome: Outcome::from_checks(!c.failed),
        payload: json!({"passed": passed, "total": c.rows.len(), "checks": c.rows}),
    })
}
