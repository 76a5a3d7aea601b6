//! One handler per subcommand.

use std::path::Path;

use delpezzo_core::chern::{
    chern_p1bundle, dt0_transition_check, genus_coefficients, genus_difference_with, genus_eval_with,
    tabulated_delta_chi, transition_datum, BundleData, C3Coefficient, DpLabel, GenusWeights, SurfaceInvariants,
};
use delpezzo_core::degeneration::{
    assemble_gw, assemble_gw_by_splitting, assemble_pt, assemble_pt_rational_by_splitting, correspondence_mismatches,
    enumerate_splittings, synthetic_harness, synthetic_harness_corrupted, CurveClassLattice, RelEntry, RelativeTable,
};
use delpezzo_core::exact::{
    pade_reconstruct, parse_rational, parse_rational_list, rational_to_string, substitute_exp, LaurentSeries,
    Rational, RationalFunction, Var,
};
use delpezzo_core::partitions::{
    bar_transform, enumerate_weighted_partitions, nakajima_pairing, ring_from_name, set_partitions, ChernClasses,
    CorrMatrix, DescendentSum, GradedRing, WeightedPartition,
};
use delpezzo_core::plane_config::{first_good_sample, general_position_certificate, sigma_points, PlanePoint};
use delpezzo_core::toric::{blow_up_position, dp_degeneration_fan, validate_fan, Fan2D};
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{read_json, Failure, Outcome};

fn labels(label: Option<&str>) -> Result<Vec<DpLabel>, Failure> {
    match label {
        Some(s) => Ok(vec![s.parse().map_err(|e: delpezzo_core::chern::ChernError| Failure::Usage(e.to_string()))?]),
        None => Ok(DpLabel::ALL.to_vec()),
    }
}

fn rs(r: &Rational) -> String {
    rational_to_string(r)
}

fn ring(name: &str) -> Result<GradedRing, Failure> {
    ring_from_name(name).map_err(Failure::data)
}

fn ring_value(v: &Value) -> Result<GradedRing, Failure> {
    match v {
        Value::String(s) => ring(s),
        other => serde_json::from_value(other.clone()).map_err(|e| Failure::Data(format!("ring: {e}"))),
    }
}

pub(crate) fn table(label: Option<&str>) -> Result<Outcome, Failure> {
    let mut rows = Vec::new();
    let mut consistent = true;
    for l in labels(label)? {
        let datum = transition_datum(l);
        let tabulated = tabulated_delta_chi(l);
        consistent &= tabulated == datum.delta_chi && datum.y.c3 - datum.x.c3 == tabulated;
        let mut row = serde_json::to_value(&datum).map_err(Failure::data)?;
        row["delta_chi"] = json!(tabulated);
        row["delta_chi_recomputed"] = json!(datum.delta_chi);
        rows.push(row);
    }
    Ok(Outcome::new(json!({ "rows": rows }))?.check(consistent, "Δχ disagrees with 2(12 - d) - c3(X_d)"))
}

#[derive(Deserialize)]
struct BundleInput {
    surface: SurfaceInvariants,
    bundle: BundleData,
}

pub(crate) fn chern(degree: Option<i64>, json_path: Option<&Path>) -> Result<Outcome, Failure> {
    if let Some(p) = json_path {
        let input: BundleInput = read_json(p)?;
        let c = chern_p1bundle(input.surface, input.bundle);
        return Outcome::new(json!({ "surface": input.surface, "bundle": input.bundle, "chern": c }));
    }
    let degrees: Vec<i64> = match degree {
        Some(d) if (1..=9).contains(&d) => vec![d],
        Some(d) => return Err(Failure::Usage(format!("degree {d} is outside 1..=9"))),
        None => (1..=8).collect(),
    };
    let rows: Vec<Value> = degrees
        .into_iter()
        .map(|d| {
            let s = SurfaceInvariants::del_pezzo(d);
            let l = s.canonical_bundle();
            json!({ "degree": d, "surface": s, "bundle": l, "chern": chern_p1bundle(s, l) })
        })
        .collect();
    Outcome::new(json!({ "rows": rows }))
}

pub(crate) fn genus(
    weights: Option<&str>,
    l_genus: bool,
    as_printed: bool,
    label: Option<&str>,
) -> Result<Outcome, Failure> {
    let w = match weights {
        Some(s) => GenusWeights::parse(s).map_err(|e| Failure::Usage(e.to_string()))?,
        None if l_genus => GenusWeights::l_genus(),
        None => GenusWeights::todd(),
    };
    let mode = if as_printed { C3Coefficient::AsPrinted } else { C3Coefficient::Derived };
    let [k3, k12, k111] = genus_coefficients(&w, mode);
    let rows: Vec<Value> = labels(label)?
        .into_iter()
        .map(|l| {
            let d = transition_datum(l);
            json!({
                "label": l,
                "X": rs(&genus_eval_with(&w, &d.x, mode)),
                "Y": rs(&genus_eval_with(&w, &d.y, mode)),
                "difference": rs(&genus_difference_with(l, &w, mode)),
            })
        })
        .collect();
    Outcome::new(json!({
        "weights": [rs(&w.a1), rs(&w.a2), rs(&w.a3)],
        "mode": mode,
        "coefficients": { "c3": rs(&k3), "c1_c2": rs(&k12), "c1_cubed": rs(&k111) },
        "rows": rows,
    }))
}

pub(crate) fn toric(k: Option<usize>, json_path: Option<&Path>) -> Result<Outcome, Failure> {
    if let Some(p) = json_path {
        let fan: Fan2D = read_json(p)?;
        let report = validate_fan(&fan).map_err(Failure::data)?;
        return Outcome::new(json!({ "fan": fan, "report": report }));
    }
    let ks: Vec<usize> = match k {
        Some(k) if k <= 8 => vec![k],
        Some(k) => return Err(Failure::Usage(format!("k = {k} is outside 0..=8"))),
        None => (0..=8).collect(),
    };
    let mut rows = Vec::new();
    let mut chain = true;
    let mut previous: Option<Fan2D> = None;
    for k in ks {
        let fan = dp_degeneration_fan(k).map_err(Failure::data)?;
        let report = validate_fan(&fan).map_err(Failure::data)?;
        let position = previous.as_ref().map(|prev| blow_up_position(prev, &fan));
        if let Some(pos) = position {
            chain &= pos.is_some();
        }
        rows.push(json!({ "k": k, "fan": fan, "report": report, "blow_up_position": position.flatten() }));
        previous = Some(fan);
    }
    Ok(Outcome::new(json!({ "fans": rows }))?.check(chain, "a fan is not a blow-up of the previous one"))
}

pub(crate) fn genpos(sigma: bool, json_path: Option<&Path>, t: Option<&str>, search: i64) -> Result<Outcome, Failure> {
    let points: Vec<PlanePoint> = match json_path {
        Some(p) if !sigma => read_json(p)?,
        _ => sigma_points(),
    };
    let t = t.map(|s| parse_rational(s).map_err(|e| Failure::Usage(e.to_string()))).transpose()?;
    let mut report = general_position_certificate(&points, t.as_ref()).map_err(Failure::data)?;
    let mut diagnostics = Vec::new();
    if report.sample.is_none() {
        match first_good_sample(&report, search) {
            Some(t) => report.sample = Some(report.check_sample(&t)),
            None => diagnostics.push(format!("no good integer sample in 1..={search}")),
        }
    }
    let sample_ok = report.sample.as_ref().is_some_and(|s| s.passed);
    let generic = report.all_generic;
    let mut payload = serde_json::to_value(&report).map_err(Failure::data)?;
    payload["determinant_count"] = json!(report.determinant_count());
    payload["points"] = serde_json::to_value(&points).map_err(Failure::data)?;
    let mut out = Outcome::new(payload)?.check(generic, "some determinant vanishes identically");
    out.diagnostics.extend(diagnostics);
    Ok(out.check(sample_ok, "no passing sample certificate"))
}

#[derive(Deserialize)]
struct ChernInput {
    #[serde(default)]
    c1: Option<String>,
    #[serde(default)]
    c2: Option<String>,
    #[serde(default)]
    c3: Option<String>,
}

#[derive(Deserialize)]
struct BarInput {
    alpha: Vec<u32>,
    classes: Vec<String>,
    #[serde(default)]
    chern: Option<ChernInput>,
    /// Identity correspondence when absent.
    #[serde(default)]
    matrix: Option<CorrMatrix>,
    #[serde(default = "default_trunc")]
    trunc: i64,
}

fn default_trunc() -> i64 {
    10
}

fn bar_payload(input: BarInput, r: &GradedRing) -> Result<Value, Failure> {
    let parse = |s: &Option<String>| match s {
        Some(s) => r.parse_class(s).map_err(Failure::data),
        None => Ok(r.zero()),
    };
    let chern = match &input.chern {
        Some(c) => ChernClasses { c1: parse(&c.c1)?, c2: parse(&c.c2)?, c3: parse(&c.c3)? },
        None => ChernClasses::zero(r),
    };
    let gammas = input.classes.iter().map(|c| r.parse_class(c)).collect::<Result<Vec<_>, _>>().map_err(Failure::data)?;
    let k = input.matrix.unwrap_or_else(|| CorrMatrix::identity(input.trunc));
    let sum: DescendentSum<LaurentSeries> = bar_transform(&input.alpha, &gammas, r, &k, &chern).map_err(Failure::data)?;
    let terms: Vec<Value> = sum
        .terms()
        .iter()
        .map(|(m, c)| json!({ "monomial": DescendentSum::<LaurentSeries>::format_monomial(m, r), "coefficient": c }))
        .collect();
    Ok(json!({ "alpha": input.alpha, "classes": input.classes, "terms": terms }))
}

pub(crate) fn partitions(
    size: Option<u32>,
    ring_name: &str,
    set: Option<usize>,
    json_path: Option<&Path>,
) -> Result<Outcome, Failure> {
    let r = ring(ring_name)?;
    let mut payload = json!({ "ring": r.labels() });
    if let Some(n) = size {
        let list: Vec<Value> = enumerate_weighted_partitions(n, &r)
            .iter()
            .map(|e| {
                json!({ "eta": e.format(&r), "length": e.len(), "z": e.z().to_string(), "dual": e.dual(&r).format(&r) })
            })
            .collect();
        payload["size"] = json!(n);
        payload["count"] = json!(list.len());
        payload["partitions"] = json!(list);
    }
    if let Some(k) = set {
        if k > 10 {
            return Err(Failure::Usage(format!("--set {k} is too large; at most 10")));
        }
        let blocks = set_partitions(k);
        payload["set_partitions"] = json!({ "r": k, "count": blocks.len(), "partitions": blocks });
    }
    if let Some(p) = json_path {
        payload["bar"] = bar_payload(read_json(p)?, &r)?;
    }
    Outcome::new(payload)
}

pub(crate) fn nakajima(size: Option<u32>, ring_name: &str, eta: Option<&str>, nu: Option<&str>) -> Result<Outcome, Failure> {
    let r = ring(ring_name)?;
    let parse = |s: &str| WeightedPartition::parse(s, &r).map_err(|e| Failure::Usage(e.to_string()));
    if let (Some(e), Some(n)) = (eta, nu) {
        let (e, n) = (parse(e)?, parse(n)?);
        let value = nakajima_pairing(&e, &n, &r).map_err(Failure::data)?;
        return Outcome::new(json!({ "eta": e.format(&r), "nu": n.format(&r), "pairing": rs(&value) }));
    }
    let size = size.ok_or_else(|| Failure::Usage("nakajima needs --size, or both --eta and --nu".into()))?;
    let basis = enumerate_weighted_partitions(size, &r);
    let mut entries = Vec::new();
    let mut diagonal = true;
    for e in &basis {
        let dual = e.dual(&r);
        for n in &basis {
            let value = nakajima_pairing(e, n, &r).map_err(Failure::data)?;
            if value.is_zero() {
                continue;
            }
            diagonal &= *n == dual;
            entries.push(json!({ "eta": e.format(&r), "nu": n.format(&r), "pairing": rs(&value) }));
        }
    }
    let basis: Vec<String> = basis.iter().map(|e| e.format(&r)).collect();
    Outcome::new(json!({
        "ring": r.labels(),
        "size": size,
        "basis": basis,
        "nonzero": entries,
        "diagonal_under_duality": diagonal,
    }))
}

pub(crate) fn rational(
    coeffs: &str,
    start: i64,
    num_degree: Option<usize>,
    den_degree: Option<usize>,
) -> Result<Outcome, Failure> {
    let cs = parse_rational_list(coeffs).map_err(|e| Failure::Usage(e.to_string()))?;
    let series = LaurentSeries::from_real(Var::Q, start, &cs, start + cs.len() as i64);
    let budget = (series.precision().max(0) as usize).saturating_sub(2);
    let (n, d) = match (num_degree, den_degree) {
        (Some(n), Some(d)) => (n, d),
        (Some(n), None) => (n, budget.saturating_sub(n)),
        (None, Some(d)) => (budget.saturating_sub(d), d),
        (None, None) => (budget / 2, budget - budget / 2),
    };
    let f = pade_reconstruct(&series, n, d).map_err(Failure::data)?;
    Outcome::new(json!({
        "num_degree": n,
        "den_degree": d,
        "function": f,
        "display": f.display_in("q"),
    }))
}

pub(crate) fn bridge(num: Option<&str>, den: Option<&str>, json_path: Option<&Path>, order: i64) -> Result<Outcome, Failure> {
    let f: RationalFunction = match json_path {
        Some(p) => read_json(p)?,
        None => {
            let list = |s: Option<&str>| parse_rational_list(s.unwrap_or("")).map_err(|e| Failure::Usage(e.to_string()));
            RationalFunction::from_real(&list(num)?, &list(den)?).map_err(|e| Failure::Usage(e.to_string()))?
        }
    };
    let series = substitute_exp(&f, order).map_err(Failure::data)?;
    Outcome::new(json!({ "function": f, "display": f.display_in("q"), "order": order, "series": series }))
}

#[derive(Deserialize)]
struct DegenerateInput {
    lattice: CurveClassLattice,
    /// A preset name or a ring object.
    ring: Value,
    beta: String,
    #[serde(default)]
    insertions: Vec<String>,
    #[serde(default)]
    gw: Option<RelativeTable>,
    #[serde(default)]
    pt: Option<RelativeTable>,
    /// Expansion order for PT series entries.
    #[serde(default)]
    trunc: Option<i64>,
    #[serde(default)]
    c_beta: Option<i64>,
    /// Correspondence check through `u^order`, when both tables are present.
    #[serde(default)]
    order: Option<i64>,
}

pub(crate) fn degenerate(json_path: &Path, order_override: Option<i64>) -> Result<Outcome, Failure> {
    let input: DegenerateInput = read_json(json_path)?;
    let r = ring_value(&input.ring)?;
    let (lattice, beta, ins) = (&input.lattice, input.beta.as_str(), &input.insertions);
    let splittings = enumerate_splittings(beta, lattice).map_err(Failure::data)?;
    let mut payload = json!({ "beta": beta, "insertions": ins, "splittings": splittings });
    let gw_total = match input.gw {
        Some(t) => {
            let t = t.canonicalize(&r).map_err(Failure::data)?;
            let parts = assemble_gw_by_splitting(beta, ins, &t, lattice, &r).map_err(Failure::data)?;
            let total = assemble_gw(beta, ins, &t, lattice, &r).map_err(Failure::data)?;
            let by: Vec<Value> = parts.iter().map(|(s, f)| json!({ "splitting": s, "series": f })).collect();
            payload["gw"] = json!({ "total": total, "by_splitting": by });
            Some(total)
        }
        None => None,
    };
    let mut pt_total = None;
    if let Some(t) = input.pt {
        let t = t.canonicalize(&r).map_err(Failure::data)?;
        if t.entries().values().all(|e| matches!(e, RelEntry::Rational(_))) {
            let parts = assemble_pt_rational_by_splitting(beta, ins, &t, lattice, &r).map_err(Failure::data)?;
            let total = RationalFunction::sum(parts.iter().map(|p| &p.1));
            let by: Vec<Value> = parts.iter().map(|(s, f)| json!({ "splitting": s, "function": f })).collect();
            payload["pt"] = json!({ "total": total, "display": total.display_in("q"), "by_splitting": by });
            pt_total = Some(total);
        } else {
            let trunc = input.trunc.ok_or_else(|| Failure::Data("PT series entries need \"trunc\"".into()))?;
            let total = assemble_pt(beta, ins, &t, lattice, &r, trunc).map_err(Failure::data)?;
            payload["pt"] = json!({ "total": total });
        }
    }
    let order = order_override.or(input.order);
    let mut out_ok = true;
    if let (Some(zgw), Some(zpt), Some(order)) = (&gw_total, &pt_total, order) {
        let c_beta = match input.c_beta {
            Some(c) => c,
            None => lattice.class(beta).map_err(Failure::data)?.c_beta,
        };
        let mismatches = correspondence_mismatches(zpt, zgw, c_beta, 0, order).map_err(Failure::data)?;
        out_ok = mismatches.is_empty();
        payload["correspondence"] =
            json!({ "order": order, "c_beta": c_beta, "mismatches": mismatches, "holds": out_ok });
    }
    Ok(Outcome::new(payload)?.check(out_ok, "absolute GW/PT correspondence"))
}

pub(crate) fn harness(
    seed: u64,
    runs: u64,
    max_rho: u32,
    insertions: usize,
    order: i64,
    corrupt: bool,
    verbose: bool,
) -> Result<Outcome, Failure> {
    if runs == 0 || max_rho == 0 || order < 0 {
        return Err(Failure::Usage("--runs and --max-rho must be positive and --order nonnegative".into()));
    }
    let mut rows = Vec::new();
    let (mut failures, mut localized) = (0u64, 0u64);
    for s in seed..seed + runs {
        let report = if corrupt {
            synthetic_harness_corrupted(s, max_rho, insertions, order)
        } else {
            synthetic_harness(s, max_rho, insertions, order)
        }
        .map_err(Failure::data)?;
        failures += u64::from(!report.passed);
        localized += u64::from(report.localizes_fault());
        rows.push(if verbose {
            serde_json::to_value(&report).map_err(Failure::data)?
        } else {
            json!({
                "seed": report.seed,
                "c_beta": report.c_beta,
                "splittings": report.splittings.len(),
                "passed": report.passed,
                "failing": report.failing(),
                "corrupted": report.corrupted,
            })
        });
    }
    let mut summary = json!({ "runs": runs, "failures": failures, "corrupt": corrupt, "reports": rows });
    if corrupt {
        summary["localized"] = json!(localized);
    }
    let passed = if corrupt { localized == runs } else { failures == 0 };
    let what = if corrupt { "a corrupted run did not fail at exactly its splitting" } else { "correspondence failed" };
    Ok(Outcome::new(summary)?.check(passed, what))
}

pub(crate) fn dt0(label: Option<&str>, order: i64) -> Result<Outcome, Failure> {
    if order < 0 {
        return Err(Failure::Usage("--order must be nonnegative".into()));
    }
    let reports: Vec<_> = labels(label)?.into_iter().map(|l| dt0_transition_check(l, order)).collect();
    let all = reports.iter().all(|r| r.agrees);
    Ok(Outcome::new(json!({ "order": order, "reports": reports }))?.check(all, "M(-q) power identity"))
}
