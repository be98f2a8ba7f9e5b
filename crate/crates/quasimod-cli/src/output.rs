//! JSON and text rendering. The JSON schema is versioned and stable:
//! {schema, command, config, profile?, variant?, series?, qmpoly?, value?,
//!  graphs?, checks?}.

use quasimod::quasimodular::{monomial_weight, QmPoly};
use quasimod::rational::format_rat;
use quasimod::series::QSeries;
use serde::Serialize;

#[derive(Serialize)]
pub struct JsonSeries {
    pub order: usize,
    pub coeffs: Vec<String>,
}

#[derive(Serialize)]
pub struct JsonQmTerm {
    pub exp: [u32; 3],
    pub coeff: String,
}

#[derive(Serialize)]
pub struct GraphItem {
    pub graph: String,
    pub aut: String,
    pub series: JsonSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<(Vec<JsonQmTerm>, String)>,
}

#[derive(Serialize)]
struct JsonConfig {
    oracle_budget: u128,
    fit_margin: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    threads: Option<usize>,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    config: JsonConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<JsonSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qmpoly: Option<Vec<JsonQmTerm>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qmpoly_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graphs: Option<Vec<GraphItem>>,
    #[serde(serialize_with = "serialize_checks", skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<(String, bool)>,
}

fn serialize_checks<S>(checks: &[(String, bool)], s: S) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    #[derive(Serialize)]
    struct Check<'a> {
        name: &'a str,
        pass: bool,
    }
    s.collect_seq(checks.iter().map(|(name, pass)| Check { name, pass: *pass }))
}

impl Report {
    pub fn new(command: &str, config: &crate::Config) -> Report {
        Report {
            schema: 1,
            command: command.into(),
            config: JsonConfig {
                oracle_budget: config.oracle_budget,
                fit_margin: config.fit_margin,
                threads: config.threads,
            },
            profile: None,
            variant: None,
            series: None,
            qmpoly: None,
            qmpoly_text: None,
            value: None,
            graphs: None,
            checks: Vec::new(),
        }
    }

    pub fn emit(&self, output: &str) {
        if output == "json" {
            println!("{}", serde_json::to_string_pretty(self).expect("serializable"));
            return;
        }
        if let Some(p) = &self.profile {
            println!("profile: {}", if p.is_empty() { "(empty)" } else { p });
        }
        if let Some(v) = &self.variant {
            println!("variant: {v}");
        }
        if let Some(s) = &self.series {
            println!("series (order {}): [{}]", s.order, s.coeffs.join(", "));
        }
        if let Some(t) = &self.qmpoly_text {
            println!("{t}");
        }
        if let Some(v) = &self.value {
            println!("{v}");
        }
        if let Some(graphs) = &self.graphs {
            for g in graphs {
                println!("graph {} (|Aut| = {}): [{}]", g.graph, g.aut, g.series.coeffs.join(", "));
                if let Some((_, text)) = &g.fit {
                    println!("  = {text}");
                }
            }
        }
        for (name, pass) in &self.checks {
            println!("check {}: {}", name, if *pass { "pass" } else { "FAIL" });
        }
    }
}

pub fn json_series(s: &QSeries) -> JsonSeries {
    JsonSeries {
        order: s.order(),
        coeffs: s.coeffs().iter().map(format_rat).collect(),
    }
}

/// Deterministic: ascending lexicographic in (weight, a, b, c).
pub fn json_qmpoly(p: &QmPoly) -> Vec<JsonQmTerm> {
    let mut terms: Vec<JsonQmTerm> = p
        .terms()
        .map(|(m, c)| JsonQmTerm { exp: *m, coeff: format_rat(c) })
        .collect();
    terms.sort_by_key(|t| (monomial_weight(&t.exp), t.exp[0], t.exp[1], t.exp[2]));
    terms
}
