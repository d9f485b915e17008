use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize};

use super::graph::{gamma_graph, StageGraph};
use super::labeling::{assign_edge_words_avoiding, EdgeLabeling};
use super::relations::{build_relations, relator_audit, RelatorAudit, SpanningTree};
use super::sequence::{certify_sequence, fast_sequence, orbit_supply, Instance};
use super::snet::{nested_snets, SeedOrder};
use super::space::{torus_bouquet_space, MetricSample};
use crate::error::{Error, Result};
use crate::report::{parse_rational, rational_to_f64};
use crate::smallcancel::{check_c_prime, check_cstar, cstar_profile, generate_cstar_words, CStarProfile};
use crate::words::{default_names, Presentation, Word, WordSet};

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Float(f64),
    Text(String),
}

fn to_rational(r: RationalRepr) -> std::result::Result<Rational64, String> {
    match r {
        RationalRepr::Int(i) => Ok(Rational64::from_integer(i)),
        RationalRepr::Float(f) => parse_rational(&f.to_string()).map_err(|e| e.to_string()),
        RationalRepr::Text(t) => parse_rational(&t).map_err(|e| e.to_string()),
    }
}

fn de_rational<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational64, D::Error> {
    to_rational(RationalRepr::deserialize(d)?).map_err(serde::de::Error::custom)
}

fn de_rationals<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational64>, D::Error> {
    Vec::<RationalRepr>::deserialize(d)?
        .into_iter()
        .map(|r| to_rational(r).map_err(serde::de::Error::custom))
        .collect()
}

fn default_lambda() -> Rational64 {
    Rational64::new(1, 500)
}

fn one() -> Rational64 {
    Rational64::from_integer(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum DSeq {
    Auto(String),
    Given(Vec<i64>),
}

impl Default for DSeq {
    fn default() -> Self {
        DSeq::Auto("auto".into())
    }
}

/// A bouquet of grid-sampled tori.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct SpaceSpec {
    pub dims: Vec<usize>,
    pub grid: usize,
}

/// Where the small cancellation words come from: a file with one word per
/// line, or a seeded generator run.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct WordsSpec {
    pub file: Option<PathBuf>,
    #[serde(default)]
    pub lengths: Vec<usize>,
    #[serde(default)]
    pub per_length: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EOConfig {
    #[serde(deserialize_with = "de_rational")]
    pub zeta: Rational64,
    #[serde(default = "default_lambda", deserialize_with = "de_rational")]
    pub lambda: Rational64,
    #[serde(default)]
    pub d_seq: DSeq,
    pub stage_max: usize,
    #[serde(default = "one", deserialize_with = "de_rational")]
    pub growth: Rational64,
    #[serde(default, deserialize_with = "de_rationals")]
    pub eps: Vec<Rational64>,
    /// Simple cycles up to this many edges are added to each cycle basis.
    #[serde(default)]
    pub cycle_bound: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub spaces: Vec<SpaceSpec>,
    pub words: Option<WordsSpec>,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl EOConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: EOConfig = toml::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; a relative words file is resolved against the
    /// config's directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let (zero, one) = (Rational64::from_integer(0), Rational64::from_integer(1));
        if self.zeta <= zero || self.zeta >= one {
            return Err(Error::InvalidInput(format!("zeta = {} is outside (0,1)", self.zeta)));
        }
        if self.lambda <= zero || self.lambda >= one {
            return Err(Error::InvalidInput(format!("lambda = {} is outside (0,1)", self.lambda)));
        }
        if self.stage_max > 0 {
            if self.spaces.is_empty() {
                return Err(Error::InvalidInput("no spaces given".into()));
            }
            if self.words.is_none() {
                return Err(Error::InvalidInput("no words given".into()));
            }
        }
        match &self.d_seq {
            DSeq::Auto(s) if s != "auto" => Err(Error::InvalidInput(format!("d_seq = {s:?}: expected \"auto\" or a list"))),
            DSeq::Auto(_) if self.eps.len() < self.stage_max => {
                Err(Error::InvalidInput(format!("eps has {} entries, {} stages", self.eps.len(), self.stage_max)))
            }
            DSeq::Given(d) if d.len() < self.stage_max => {
                Err(Error::InvalidInput(format!("d_seq has {} entries, {} stages", d.len(), self.stage_max)))
            }
            _ => Ok(()),
        }
    }

    pub fn build_spaces(&self) -> Result<Vec<MetricSample>> {
        self.spaces.iter().map(|s| torus_bouquet_space(&s.dims, s.grid)).collect()
    }

    /// The closed word set `W`, verified against `C*(λ)`.
    pub fn word_set(&self) -> Result<WordSet> {
        let Some(spec) = &self.words else {
            return Ok(WordSet::new());
        };
        let set = match &spec.file {
            Some(f) => {
                let path = match &self.base_dir {
                    Some(b) if f.is_relative() => b.join(f),
                    _ => f.clone(),
                };
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                crate::words::close_word_set(&WordSet::from_text(&text, &default_names(2))?)
            }
            None => generate_cstar_words(self.lambda, &spec.lengths, spec.per_length, spec.seed)?.words,
        };
        let (ok, witness) = check_cstar(&set, self.lambda);
        if !ok {
            return Err(Error::Verification(format!("words fail C*({}): {witness:?}", self.lambda)));
        }
        Ok(set)
    }
}

/// Global stage `n` is read in space `k = 1 + (trailing zeros of n)`, the
/// last space standing in for any beyond the list.
pub fn space_for_stage(n: usize, spaces: usize) -> usize {
    (1 + n.trailing_zeros() as usize).min(spaces)
}

#[derive(Clone, Debug, Serialize)]
pub struct StageDiagnostics {
    pub n: usize,
    pub space: usize,
    pub net_size: usize,
    pub kappa: f64,
    pub edges: usize,
    pub connected: bool,
    pub d_n: i64,
    pub relators: usize,
    pub audit: Vec<RelatorAudit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EODiagnostics {
    pub seed: u64,
    pub zeta: f64,
    pub lambda: f64,
    pub stage_max: usize,
    pub d_seq: Vec<i64>,
    pub sequence: Vec<Instance>,
    pub word_orbits: usize,
    pub cstar_profile: CStarProfile,
    /// Largest piece ratio of the emitted relators.
    pub c_prime_measured: Option<f64>,
    pub c_prime_tenth: Option<bool>,
    pub stages: Vec<StageDiagnostics>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EOBuild {
    #[serde(serialize_with = "ser_display")]
    pub presentation: Presentation,
    pub diagnostics: EODiagnostics,
    #[serde(skip)]
    pub graphs: Vec<StageGraph>,
    #[serde(skip)]
    pub labelings: Vec<EdgeLabeling>,
}

fn ser_display<S: serde::Serializer>(p: &Presentation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn stage_err(n: usize) -> impl Fn(Error) -> Error {
    move |e| Error::Stage {
        stage: n,
        source: Box::new(e),
    }
}

/// The two-generator presentation whose relators are the net words of the
/// loops of each stage graph `Γ_n = Γ_{ζ^⌊n/2⌋}(N_n)`, with diagnostics.
pub fn build_eo_presentation(cfg: &EOConfig, spaces: &[MetricSample]) -> Result<EOBuild> {
    cfg.validate()?;
    if cfg.stage_max > 0 && spaces.is_empty() {
        return Err(Error::InvalidInput("no spaces given".into()));
    }
    let words = cfg.word_set()?;
    let zeta = rational_to_f64(cfg.zeta);
    let mut graphs = Vec::new();
    let mut meta = Vec::new();
    for n in 1..=cfg.stage_max {
        let k = space_for_stage(n, spaces.len());
        let space = &spaces[k - 1];
        let radii: Vec<f64> = (1..=n).map(|i| i as f64).collect();
        let deltas: Vec<f64> = (1..=n).map(|i| zeta.powi(i as i32)).collect();
        let chain = nested_snets(space, &radii, &deltas, &SeedOrder::Natural).map_err(stage_err(n))?;
        let kappa = zeta.powi((n / 2) as i32);
        let g = gamma_graph(space, chain.net(n), kappa);
        meta.push((k, chain.net(n).len(), kappa));
        graphs.push(g);
    }
    let edge_counts: Vec<usize> = graphs.iter().map(|g| g.edge_count()).collect();
    let supply = orbit_supply(&words);
    let (d_seq, sequence) = match &cfg.d_seq {
        DSeq::Given(d) => {
            let d = d[..cfg.stage_max].to_vec();
            let cert = certify_sequence(&d, &edge_counts, cfg.zeta, &supply, cfg.growth, &cfg.eps);
            (d, cert)
        }
        DSeq::Auto(_) => {
            let s = fast_sequence(&edge_counts, cfg.zeta, &supply, cfg.growth, &cfg.eps)?;
            (s.d_seq, s.certificate)
        }
    };
    let mut used = BTreeSet::new();
    let mut relators: Vec<Word> = Vec::new();
    let mut stages = Vec::new();
    let mut labelings = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let n = i + 1;
        let lab = assign_edge_words_avoiding(g, &words, d_seq[i], cfg.seed.wrapping_add(n as u64), &used)
            .map_err(stage_err(n))?;
        used.extend(lab.words.iter().cloned());
        let rel = build_relations(g, &lab, cfg.cycle_bound, SpanningTree::Bfs);
        let audit = relator_audit(g, &lab, cfg.cycle_bound, SpanningTree::Bfs);
        for r in &rel {
            if !relators.contains(r) {
                relators.push(r.clone());
            }
        }
        let (space, net_size, kappa) = meta[i];
        stages.push(StageDiagnostics {
            n,
            space,
            net_size,
            kappa,
            edges: g.edge_count(),
            connected: g.connected,
            d_n: d_seq[i],
            relators: rel.len(),
            audit,
        });
        labelings.push(lab);
    }
    let presentation = Presentation::new(default_names(2), relators.clone(), Vec::new())?;
    let (c_prime_measured, c_prime_tenth) = if relators.is_empty() {
        (None, None)
    } else {
        let (rep, ok) = check_c_prime(&WordSet::from_words(relators), Rational64::new(1, 10))?;
        (Some(rational_to_f64(rep.lambda_measured)), Some(ok))
    };
    Ok(EOBuild {
        presentation,
        diagnostics: EODiagnostics {
            seed: cfg.seed,
            zeta,
            lambda: rational_to_f64(cfg.lambda),
            stage_max: cfg.stage_max,
            d_seq,
            sequence,
            word_orbits: supply.values().sum(),
            cstar_profile: cstar_profile(&words),
            c_prime_measured,
            c_prime_tenth,
            stages,
        },
        graphs,
        labelings,
    })
}
