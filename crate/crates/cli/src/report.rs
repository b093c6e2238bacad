//! Report assembly: the analysis bundle, its JSON form, and the text form
//! (a deterministic function of the JSON form).
//!
//! Exact values never degrade to floats: normalized weights and zeta
//! exponents are serialized as fraction strings, and integers that exceed
//! 2^53 are serialized as decimal strings so JavaScript consumers cannot
//! corrupt them.

use num_traits::ToPrimitive;
use polar_core::exact::{BigInt, BigRational};
use polar_core::invariants::{compute_invariants, Divisor, InvariantReport, ZetaFactored};
use polar_core::numerics::CheckReport;
use polar_core::poly::MixedPolynomial;
use polar_core::strata::StratificationReport;
use polar_core::weights::{diagnostics, is_full, is_simplicial, WeightDiagnostics, WeightSystem};
use serde_json::{json, Value};

const JS_SAFE_LIMIT: i64 = 1 << 53;

pub fn json_int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= JS_SAFE_LIMIT => Value::from(v),
        _ => Value::from(x.to_string()),
    }
}

pub fn json_ints(xs: &[BigInt]) -> Value {
    Value::from(xs.iter().map(json_int).collect::<Vec<_>>())
}

/// Exact fraction as a string, e.g. "2/3" or "1".
pub fn json_ratio(x: &BigRational) -> Value {
    Value::from(x.to_string())
}

pub fn json_ratios(xs: &[BigRational]) -> Value {
    Value::from(xs.iter().map(json_ratio).collect::<Vec<_>>())
}

pub fn zeta_json(z: &ZetaFactored) -> Value {
    json!({
        "factors": z.factors().map(|(m, e)| json!({"m": json_int(m), "e": json_int(e)})).collect::<Vec<_>>(),
        "text": z.render_text(),
    })
}

pub fn divisor_json(d: &Divisor) -> Value {
    json!({
        "terms": d.terms().map(|(m, c)| json!({"m": json_int(m), "c": json_int(c)})).collect::<Vec<_>>(),
        "text": d.render_text(),
    })
}

pub fn check_json(c: &CheckReport) -> Value {
    json!({
        "name": c.name,
        "samples_run": c.samples_run,
        "max_relative_residual": c.max_relative_residual,
        "tol": c.tol,
        "pass": c.pass,
    })
}

pub fn weights_json(w: &WeightSystem) -> Value {
    json!({
        "radial": {"q": json_ints(&w.q), "m_r": json_int(&w.m_r), "u": json_ratios(&w.u)},
        "polar": {"p": json_ints(&w.p), "m_p": json_int(&w.m_p), "v": json_ratios(&w.v)},
    })
}

pub fn diagnostics_json(d: &WeightDiagnostics) -> Value {
    json!({
        "semipositive": d.semipositive,
        "strictly_positive": d.strictly_positive,
        "retract_subspace": d.retract_subspace,
        "every_monomial_leaves_retract": d.every_monomial_leaves_retract,
    })
}

pub fn strata_json(strat: &StratificationReport) -> Value {
    let rows: Vec<Value> = strat
        .strata
        .iter()
        .map(|s| {
            json!({
                "I": s.vars,
                "restricted": s.restricted.render(),
                "nonvanishing": s.nonvanishing,
                "full": s.full,
                "d": s.d.as_ref().map(json_int),
                "r": json_int(&s.r),
                "m_p_stratum": json_int(&s.m_p_stratum),
                "chi": json_int(&s.chi),
                "zeta_exponent": json_ratio(&s.zeta_exponent),
            })
        })
        .collect();
    json!({
        "strata": rows,
        "full_sets": strat.full_sets,
        "convenience": strat.convenience,
    })
}

pub fn invariants_json(inv: &InvariantReport) -> Value {
    json!({
        "chi": json_int(&inv.chi),
        "zeta": zeta_json(&inv.zeta),
        "divisor": divisor_json(&inv.divisor),
        "connectivity": inv.connectivity,
        "middle_betti": inv.middle_betti.as_ref().map(json_int),
        "monodromy_order": json_int(&inv.monodromy_order),
        "top_charpoly": inv.top_charpoly.as_ref().map(zeta_json),
    })
}

/// Everything the analyze command reports.
pub struct Analysis {
    pub family: Option<String>,
    pub f: MixedPolynomial,
    pub weights: WeightSystem,
    pub diagnostics: WeightDiagnostics,
    pub simplicial: bool,
    pub full: bool,
    pub strat: StratificationReport,
    pub invariants: InvariantReport,
    pub verification: Option<Vec<CheckReport>>,
}

impl Analysis {
    pub fn compute(
        f: MixedPolynomial,
        family: Option<String>,
        weights: WeightSystem,
    ) -> Result<Self, String> {
        let strat = polar_core::strata::stratify(&f, &weights).map_err(|e| e.to_string())?;
        let invariants = compute_invariants(&strat).map_err(|e| e.to_string())?;
        Ok(Analysis {
            family,
            diagnostics: diagnostics(&f, &weights),
            simplicial: is_simplicial(&f),
            full: is_full(&f),
            strat,
            invariants,
            weights,
            f,
            verification: None,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "input": {
                "polynomial": self.f.render(),
                "n": self.f.n(),
                "monomials": self.f.len(),
                "family": self.family,
            },
            "weights": weights_json(&self.weights),
            "diagnostics": diagnostics_json(&self.diagnostics),
            "simplicial": self.simplicial,
            "full": self.full,
            "stratification": strata_json(&self.strat),
            "invariants": invariants_json(&self.invariants),
            "verification": self.verification.as_ref().map(|checks| {
                json!({
                    "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
                    "pass": checks.iter().all(|c| c.pass),
                })
            }),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "input: {}  (n = {}, monomials = {})\n",
            self.f.render(),
            self.f.n(),
            self.f.len()
        ));
        if let Some(family) = &self.family {
            out.push_str(&format!("family: {family}\n"));
        }
        out.push_str(&render_weights_text(&self.weights));
        out.push_str(&render_diagnostics_text(&self.diagnostics));
        out.push_str(&format!(
            "simplicial: {}   full: {}\n",
            self.simplicial, self.full
        ));
        out.push_str(&render_strata_text(&self.strat));
        out.push_str(&render_invariants_text(&self.invariants, self.strat.n));
        if let Some(checks) = &self.verification {
            out.push_str("verification:\n");
            for c in checks {
                out.push_str(&format!("  {c}\n"));
            }
        }
        out
    }
}

pub fn render_weights_text(w: &WeightSystem) -> String {
    let fmt_ints = |xs: &[BigInt]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let fmt_rats = |xs: &[BigRational]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "radial weights: q = ({}), m_r = {}, u = ({})\npolar weights:  p = ({}), m_p = {}, v = ({})\n",
        fmt_ints(&w.q),
        w.m_r,
        fmt_rats(&w.u),
        fmt_ints(&w.p),
        w.m_p,
        fmt_rats(&w.v)
    )
}

pub fn render_diagnostics_text(d: &WeightDiagnostics) -> String {
    let subspace = if d.retract_subspace.is_empty() {
        "{}".to_string()
    } else {
        format!(
            "{{{}}}",
            d.retract_subspace
                .iter()
                .map(|j| format!("z{j}"))
                .collect::<Vec<_>>()
                .join(", ")
        )
    };
    format!(
        "diagnostics: semipositive = {}, strictly positive = {}, retract subspace I0 = {}\n",
        d.semipositive, d.strictly_positive, subspace
    )
}

pub fn render_strata_text(strat: &StratificationReport) -> String {
    let mut out = String::new();
    out.push_str("strata (nonvanishing restrictions):\n");
    out.push_str("  I                 full  d       r    m_p,I   chi      zeta-exp\n");
    for s in &strat.strata {
        let set = format!(
            "{{{}}}",
            s.vars
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        out.push_str(&format!(
            "  {:<17} {:<5} {:<7} {:<4} {:<7} {:<8} {}\n",
            set,
            if s.full { "yes" } else { "no" },
            s.d.as_ref().map_or("-".to_string(), |d| d.to_string()),
            s.r,
            s.m_p_stratum,
            s.chi,
            s.zeta_exponent
        ));
    }
    out.push_str(&format!("convenience: k = {}\n", strat.convenience));
    out
}

pub fn render_invariants_text(inv: &InvariantReport, n: usize) -> String {
    let mut out = String::new();
    out.push_str("invariants:\n");
    out.push_str(&format!("  chi(F) = {}\n", inv.chi));
    out.push_str(&format!("  zeta(t) = {}\n", inv.zeta.render_text()));
    out.push_str(&format!("  divisor(zeta) = {}\n", inv.divisor.render_text()));
    if inv.connectivity < 0 {
        out.push_str("  connectivity: no connectivity guaranteed\n");
    } else {
        out.push_str(&format!("  connectivity: {}-connected\n", inv.connectivity));
    }
    match &inv.middle_betti {
        Some(b) => out.push_str(&format!("  middle betti b_{} = {}\n", n - 1, b)),
        None => out.push_str("  middle betti: not determined by the connectivity bound\n"),
    }
    out.push_str(&format!("  monodromy order = {}\n", inv.monodromy_order));
    if let Some(p2) = &inv.top_charpoly {
        out.push_str(&format!(
            "  P2 (char. poly on H_2) = {}  (degree {})\n",
            p2.render_text(),
            p2.degree()
        ));
    }
    out
}
