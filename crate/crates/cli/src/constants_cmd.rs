//! Table of every constant for one configuration.

use algpoints::constants::{formula_ledger_text, masser_condition_holds, masser_parameters, ConstantSet, Decision, FORMULA_LEDGER};
use algpoints::Interval;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::config::Resolved;
use crate::error::CliResult;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConstantRow {
    pub name: String,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    /// Exact rational value when there is one.
    pub exact: String,
    pub formula: String,
    pub site: String,
}

#[derive(Clone, Debug)]
pub struct ConstantsOutput {
    pub set: ConstantSet,
    pub rows: Vec<ConstantRow>,
    pub masser_decision: Decision,
    pub masser_margin: f64,
    pub in_proof_regime: bool,
    pub text: String,
}

fn ledger(name: &str) -> (String, String) {
    FORMULA_LEDGER
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, f, s)| (f.to_string(), s.to_string()))
        .unwrap_or_default()
}

fn row(name: &str, v: &Interval) -> ConstantRow {
    let (formula, site) = ledger(name);
    ConstantRow {
        name: name.into(),
        value: v.mid_f64(),
        lo: v.lo_f64(),
        hi: v.hi_f64(),
        exact: String::new(),
        formula,
        site,
    }
}

fn exact_row(name: &str, q: &BigRational) -> ConstantRow {
    let (formula, site) = ledger(name);
    let v = q.to_f64().unwrap_or(f64::NAN);
    ConstantRow {
        name: name.into(),
        value: v,
        lo: v,
        hi: v,
        exact: q.to_string(),
        formula,
        site,
    }
}

pub fn cmd_constants(cfg: &Resolved) -> CliResult<ConstantsOutput> {
    let cs = masser_parameters(&cfg.params, &cfg.multipliers, cfg.prec);
    let mut rows = vec![
        row("A_go", &cs.a_go),
        row("epsilon", &cs.epsilon),
        row("C_lower", &cs.c_lower),
        row("K", &cs.k),
        row("R_H", &cs.r_h),
        exact_row("alpha", &cs.exponents.alpha),
        exact_row("beta", &cs.exponents.beta),
        exact_row("gamma", &cs.exponents.gamma),
        exact_row("eta", &cs.exponents.eta),
        row("A_sep", &cs.a_sep),
        row("Z", &cs.z),
        row("T", &cs.t),
        row("log M", &cs.log_m),
    ];
    if let Some(s) = &cs.s {
        rows.push(row("s", s));
    }
    rows.push(row("bound", &cs.bound));
    let masser = masser_condition_holds(&cs, cfg.params.d);
    let in_proof_regime = cfg.params.in_proof_regime();
    let mut text = String::new();
    text.push_str(&format!("{:<9} {:>24}  {:<12} {}\n", "constant", "value", "exact", "formula"));
    for r in &rows {
        text.push_str(&format!("{:<9} {:>24.15e}  {:<12} {}\n", r.name, r.value, r.exact, r.formula));
    }
    text.push_str(&format!(
        "\nepsilon cap applied: {}\nmain inequality (AZ)^T > (4T)^(96d^2/T) (M+1)^(16d) H^(48d^2): {:?}, log margin {:.6e}\n",
        cs.epsilon_capped,
        masser.decision,
        masser.margin.mid_f64()
    ));
    if !in_proof_regime {
        text.push_str("note: H <= e^e, outside proof regime\n");
    }
    text.push_str("\nformula ledger\n");
    text.push_str(&formula_ledger_text());
    Ok(ConstantsOutput {
        set: cs,
        rows,
        masser_decision: masser.decision,
        masser_margin: masser.margin.mid_f64(),
        in_proof_regime,
        text,
    })
}
