//! Serializable views of an [`Analysis`]. Every polynomial goes through the
//! canonical printer, so reports parse back to the exact objects.

use std::fmt::Write;

use foliation_core::efmod::{EfGenerators, SaitoVerdict};
use foliation_core::milnor::{JordanProfile, Tameness};
use foliation_core::pipeline::Analysis;
use foliation_core::poly::OneForm;
use foliation_core::scalar::Field;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormReport {
    pub p: String,
    pub q: String,
}

impl From<&OneForm> for FormReport {
    fn from(w: &OneForm) -> Self {
        FormReport {
            p: w.p.to_string(),
            q: w.q.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSetReport {
    pub count: usize,
    pub forms: Vec<FormReport>,
}

impl From<&EfGenerators> for GeneratorSetReport {
    fn from(g: &EfGenerators) -> Self {
        GeneratorSetReport {
            count: g.len(),
            forms: g.forms.iter().map(FormReport::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputReport {
    pub f: String,
    pub weights: [u32; 2],
    pub field: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TameReport {
    pub tame: bool,
    /// Top weighted-homogeneous part `g`.
    pub top_part: String,
    pub mu_g: Option<usize>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockCount {
    pub size: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub factor: String,
    pub multiplicity: usize,
    pub root: Option<String>,
    pub jordan_blocks: Vec<BlockCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeCheckReport {
    pub bound: i64,
    pub max_degree: Option<u32>,
    pub top_count: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub mu: usize,
    pub degree_check: Option<DegreeCheckReport>,
    pub minimal_polynomial: String,
    pub exponent: usize,
    pub factors: Vec<FactorReport>,
    pub theta: Option<String>,
    pub kernel_condition: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub trivial: Option<GeneratorSetReport>,
    pub four: Option<GeneratorSetReport>,
    pub omega_f: Option<FormReport>,
    pub candidate_generates: Option<bool>,
    pub witness: Option<FormReport>,
    pub syzygy: GeneratorSetReport,
    pub minimal: GeneratorSetReport,
    pub quasi_homogeneous: Option<[FormReport; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaitoReport {
    pub free: bool,
    pub constant: Option<String>,
    pub pair: [FormReport; 2],
}

impl From<&SaitoVerdict> for SaitoReport {
    fn from(v: &SaitoVerdict) -> Self {
        SaitoReport {
            free: v.free,
            constant: v.constant.as_ref().map(ToString::to_string),
            pair: [FormReport::from(&v.pair.0), FormReport::from(&v.pair.1)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingReport {
    pub stage: String,
    pub millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputReport,
    pub tameness: TameReport,
    /// Absent when `V_f` is infinite-dimensional.
    pub spectrum: Option<SpectrumReport>,
    pub generators: GeneratorsReport,
    pub saito: Option<SaitoReport>,
    /// Only filled on request, since it breaks reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<TimingReport>>,
}

pub fn blocks(p: &JordanProfile) -> Vec<BlockCount> {
    p.blocks
        .iter()
        .rev()
        .map(|(&size, &count)| BlockCount { size, count })
        .collect()
}

impl AnalysisReport {
    pub fn new(a: &Analysis, field: &Field, with_timings: bool) -> Self {
        let tameness = match &a.tameness {
            Tameness::Tame { g, mu_g } => TameReport {
                tame: true,
                top_part: g.to_string(),
                mu_g: Some(*mu_g),
                reason: None,
            },
            Tameness::NotTame { g, reason } => TameReport {
                tame: false,
                top_part: g.to_string(),
                mu_g: None,
                reason: Some(reason.clone()),
            },
        };
        let spectrum = a.spectrum.as_ref().map(|s| SpectrumReport {
            mu: s.mu,
            degree_check: s.degree_check.as_ref().map(|d| DegreeCheckReport {
                bound: d.bound,
                max_degree: d.max_degree,
                top_count: d.top_count,
                holds: d.holds(),
            }),
            minimal_polynomial: s.minimal_polynomial.to_string(),
            exponent: s.exponent,
            factors: s
                .factors
                .iter()
                .zip(&s.profiles)
                .map(|(cf, p)| FactorReport {
                    factor: cf.factor.to_string(),
                    multiplicity: cf.multiplicity,
                    root: cf.root.as_ref().map(ToString::to_string),
                    jordan_blocks: blocks(p),
                })
                .collect(),
            theta: s.theta.as_ref().map(ToString::to_string),
            kernel_condition: s.kernel_condition,
        });
        let g = &a.generators;
        AnalysisReport {
            input: InputReport {
                f: a.f.to_string(),
                weights: [a.weights.x, a.weights.y],
                field: field.describe(),
            },
            tameness,
            spectrum,
            generators: GeneratorsReport {
                trivial: g.trivial.as_ref().map(GeneratorSetReport::from),
                four: g.four.as_ref().map(GeneratorSetReport::from),
                omega_f: g.omega_f.as_ref().map(FormReport::from),
                candidate_generates: g.candidate_generates,
                witness: g.witness.as_ref().map(FormReport::from),
                syzygy: GeneratorSetReport::from(&g.syzygy),
                minimal: GeneratorSetReport::from(&g.minimal),
                quasi_homogeneous: g
                    .quasi_homogeneous
                    .as_ref()
                    .map(|(a, b)| [FormReport::from(a), FormReport::from(b)]),
            },
            saito: g.saito.as_ref().map(SaitoReport::from),
            timings: with_timings.then(|| {
                a.timings
                    .iter()
                    .map(|(stage, d)| TimingReport {
                        stage: (*stage).to_string(),
                        millis: d.as_secs_f64() * 1e3,
                    })
                    .collect()
            }),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "f        = {}", self.input.f);
        let _ = writeln!(out, "field    = {}", self.input.field);
        let _ = writeln!(out, "weights  = ({}, {})", self.input.weights[0], self.input.weights[1]);
        match (&self.tameness.tame, &self.tameness.reason) {
            (true, _) => {
                let _ = writeln!(
                    out,
                    "tame     = yes (top part {}, mu_g = {})",
                    self.tameness.top_part,
                    self.tameness.mu_g.unwrap_or(0)
                );
            }
            (false, r) => {
                let _ = writeln!(out, "tame     = no ({})", r.as_deref().unwrap_or(""));
            }
        }
        match &self.spectrum {
            None => out.push_str("V_f      = infinite-dimensional\n"),
            Some(s) => {
                let _ = writeln!(out, "mu       = {}", s.mu);
                let _ = writeln!(out, "min poly = {}", s.minimal_polynomial);
                let _ = writeln!(out, "exponent = {}", s.exponent);
                for fr in &s.factors {
                    let blocks: Vec<String> = fr
                        .jordan_blocks
                        .iter()
                        .map(|b| format!("{}x{}", b.size, b.count))
                        .collect();
                    let _ = writeln!(
                        out,
                        "  factor {} (multiplicity {}): blocks {{{}}}",
                        fr.factor,
                        fr.multiplicity,
                        blocks.join(", ")
                    );
                }
                if let Some(t) = &s.theta {
                    let _ = writeln!(out, "theta    = {t}");
                }
                if let Some(k) = s.kernel_condition {
                    let _ = writeln!(out, "kernel condition = {}", yes_no(k));
                }
            }
        }
        let g = &self.generators;
        if let Some(t) = &g.trivial {
            let _ = writeln!(out, "smooth: trivial set of {} forms", t.count);
        }
        if let Some(w) = &g.omega_f {
            let _ = writeln!(out, "omega_f  = {}", form_text(w));
        }
        if let Some(c) = g.candidate_generates {
            let label = if g.trivial.is_some() { "trivial" } else { "four-generator" };
            let _ = writeln!(out, "generation by {label} set = {}", if c { "YES" } else { "NO" });
        }
        if let Some(w) = &g.witness {
            let _ = writeln!(out, "  witness: {}", form_text(w));
        }
        let _ = writeln!(out, "syzygy generators: {}", g.syzygy.count);
        let _ = writeln!(out, "minimal generators: {}", g.minimal.count);
        for w in &g.minimal.forms {
            let _ = writeln!(out, "  {}", form_text(w));
        }
        if let Some([a, b]) = &g.quasi_homogeneous {
            let _ = writeln!(out, "quasi-homogeneous pair:\n  {}\n  {}", form_text(a), form_text(b));
        }
        if let Some(s) = &self.saito {
            let _ = writeln!(
                out,
                "Saito: free = {}, c = {}",
                yes_no(s.free),
                s.constant.as_deref().unwrap_or("none")
            );
        }
        if let Some(ts) = &self.timings {
            for t in ts {
                let _ = writeln!(out, "time {:>20}: {:.3} ms", t.stage, t.millis);
            }
        }
        out
    }
}

pub fn form_text(w: &FormReport) -> String {
    format!("({})*dx + ({})*dy", w.p, w.q)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
