//! Job configuration: command-line flags layered over an optional TOML or
//! JSON file, then validated into library objects.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use alcove_hecke::{FundamentalDomain, JContext, JParamSystem, WeightFunction, Word};
use clap::Args;
use serde::Deserialize;

/// A configuration problem, reported with the offending field.
#[derive(Debug)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: &str, message: impl ToString) -> ConfigError {
        ConfigError { field: field.to_string(), message: message.to_string() }
    }
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid `{}`: {}", self.field, self.message)
    }
}

/// Every field is optional so that a file and the flags can be merged.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(rename = "type")]
    pub root_type: Option<String>,
    pub rank: Option<usize>,
    #[serde(rename = "J")]
    pub j: Option<NodeList>,
    /// Sign per parameter key, `"+"` or `"-"`.
    pub signs: Option<BTreeMap<String, String>>,
    pub weights: Option<[i64; 3]>,
    pub domain: Option<String>,
    pub word: Option<NodeList>,
    pub sigma: Option<usize>,
    pub start: Option<NodeList>,
    pub theta: Option<usize>,
    pub radius: Option<usize>,
    pub include_sigma: Option<bool>,
    pub via_paths: Option<bool>,
    pub suite: Option<String>,
    pub bound: Option<i64>,
    pub path_index: Option<usize>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"))).collect()
    } else {
        // A run of single digits, as in `323123`.
        s.chars().map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(|| format!("{ch:?} is not a digit"))).collect()
    }
}

fn parse_weights(s: &str) -> Result<[i64; 3], String> {
    let parts: Vec<i64> = s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"))).collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [a] => Ok([*a, *a, *a]),
        [a, b] => Ok([*a, *b, 1]),
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err("expected a, a,b or a,b,c".into()),
    }
}

fn parse_signs(s: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once(':').or_else(|| part.split_once('=')).ok_or_else(|| format!("{part:?} is not key:sign"))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// A list parsed from one flag value (an alias so clap does not read it as repeated).
type NodeList = Vec<usize>;

/// Flags shared by every subcommand.
#[derive(Clone, Debug, Default, Args)]
pub struct JobArgs {
    /// TOML or JSON file with the same fields; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Cartan type: A, B, C, D, E, F, G or BC.
    #[arg(long = "type", global = true)]
    pub root_type: Option<String>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Nodes of J, e.g. `1,2`; empty or `-` for the empty set.
    #[arg(long = "J", global = true, value_parser = parse_list, allow_hyphen_values = true)]
    pub j: Option<NodeList>,
    /// Parameter signs, e.g. `1:-,2n:+`.
    #[arg(long, global = true, value_parser = parse_signs)]
    pub signs: Option<BTreeMap<String, String>>,
    /// Weights `a,b,c`: short (or node n in BC), long/middle, node 0 in BC.
    #[arg(long, global = true, value_parser = parse_weights)]
    pub weights: Option<[i64; 3]>,
    /// `default` (W^J), `sigma` (A_n with J = {1, …, n−1}), or words
    /// separated by `;`, e.g. `e;2;020;021;02;0`.
    #[arg(long, global = true)]
    pub domain: Option<String>,
    /// Word in the generators, e.g. `3,2,3,1,2,3`.
    #[arg(long, global = true, value_parser = parse_list)]
    pub word: Option<NodeList>,
    /// Index of a diagram automorphism appended to the word.
    #[arg(long, global = true)]
    pub sigma: Option<usize>,
    /// Word for the starting element of paths (default: the identity).
    #[arg(long, global = true, value_parser = parse_list, allow_hyphen_values = true)]
    pub start: Option<NodeList>,
    /// Keep only paths ending in this fundamental domain index.
    #[arg(long, global = true)]
    pub theta: Option<usize>,
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    #[arg(long, global = true)]
    pub include_sigma: bool,
    /// Also compute the matrix as a sum over paths and compare.
    #[arg(long, global = true)]
    pub via_paths: bool,
    /// relations, paths, translations or all.
    #[arg(long, global = true)]
    pub suite: Option<String>,
    /// Largest |k| of the hyperplanes drawn.
    #[arg(long, global = true)]
    pub bound: Option<i64>,
    /// Which enumerated path to draw.
    #[arg(long, global = true)]
    pub path_index: Option<usize>,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// `text` or `json`.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

impl JobArgs {
    /// File values, overridden by any flag that was given.
    pub fn resolve(&self) -> Result<JobConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(p) => read_config(p)?,
            None => JobConfig::default(),
        };
        macro_rules! over {
            ($($f:ident),*) => {$(if self.$f.is_some() { cfg.$f = self.$f.clone(); })*};
        }
        over!(root_type, rank, j, signs, weights, domain, word, sigma, start, theta, radius, suite, bound, path_index, format, output);
        if self.include_sigma {
            cfg.include_sigma = Some(true);
        }
        if self.via_paths {
            cfg.via_paths = Some(true);
        }
        if self.json {
            cfg.format = Some("json".into());
        }
        Ok(cfg)
    }
}

pub fn read_config(path: &Path) -> Result<JobConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e == "json");
    if is_json {
        serde_json::from_str(&text).map_err(|e| ConfigError::new("config", e))
    } else {
        toml::from_str(&text).map_err(|e| ConfigError::new("config", e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl JobConfig {
    pub fn label(&self) -> Result<String, ConfigError> {
        let t = self.root_type.as_deref().ok_or_else(|| ConfigError::new("type", "required"))?;
        let n = self.rank.ok_or_else(|| ConfigError::new("rank", "required"))?;
        Ok(format!("{}{n}", t.to_ascii_uppercase()))
    }

    pub fn format(&self) -> Result<Format, ConfigError> {
        match self.format.as_deref().unwrap_or("text") {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(ConfigError::new("format", format!("{other:?} is not text or json"))),
        }
    }

    pub fn context(&self) -> Result<JContext, ConfigError> {
        let label = self.label()?;
        let j = self.j.clone().unwrap_or_default();
        JContext::from_label(&label, &j).map_err(|e| match e {
            alcove_hecke::Error::InvalidNode(_) => ConfigError::new("J", e),
            _ => ConfigError::new("type", e),
        })
    }

    pub fn weight_function(&self, ctx: &JContext) -> Result<WeightFunction, ConfigError> {
        let [a, b, c] = self.weights.unwrap_or([1, 1, 1]);
        WeightFunction::new(&ctx.aw, a, b, c).map_err(|e| ConfigError::new("weights", e))
    }

    pub fn system(&self, ctx: &JContext) -> Result<JParamSystem, ConfigError> {
        let w = self.weight_function(ctx)?;
        let signs = self.signs.clone().unwrap_or_default();
        JParamSystem::from_sign_strings(ctx, &w, &signs).map_err(|e| ConfigError::new("signs", e))
    }

    pub fn domain(&self, ctx: &JContext) -> Result<FundamentalDomain, ConfigError> {
        match self.domain.as_deref().unwrap_or("default") {
            "default" => Ok(ctx.default_domain()),
            "sigma" => ctx.sigma_domain().map_err(|e| ConfigError::new("domain", e)),
            words => {
                let mut members = Vec::new();
                for w in words.split(';').map(str::trim) {
                    let letters = if w == "e" { Vec::new() } else { parse_list(w).map_err(|e| ConfigError::new("domain", e))? };
                    self.check_letters(ctx, "domain", &letters)?;
                    members.push(ctx.aw.word_to_elt(&letters, None));
                }
                FundamentalDomain::new(ctx, members).map_err(|e| ConfigError::new("domain", e))
            }
        }
    }

    fn check_letters(&self, ctx: &JContext, field: &str, letters: &[usize]) -> Result<(), ConfigError> {
        if let Some(bad) = letters.iter().find(|&&i| i > ctx.rank()) {
            return Err(ConfigError::new(field, format!("generator {bad} does not exist in rank {}", ctx.rank())));
        }
        Ok(())
    }

    pub fn word(&self, ctx: &JContext) -> Result<Word, ConfigError> {
        let letters = self.word.clone().ok_or_else(|| ConfigError::new("word", "required"))?;
        self.check_letters(ctx, "word", &letters)?;
        let sigma = self.sigma.unwrap_or(0);
        if sigma >= ctx.aw.sigma_group().len() {
            return Err(ConfigError::new("sigma", format!("only {} diagram automorphisms", ctx.aw.sigma_group().len())));
        }
        Ok(Word::with_sigma(letters, sigma))
    }

    pub fn start(&self, ctx: &JContext) -> Result<alcove_hecke::ExtAffineElt, ConfigError> {
        let letters = self.start.clone().unwrap_or_default();
        self.check_letters(ctx, "start", &letters)?;
        let x = ctx.aw.word_to_elt(&letters, None);
        if !ctx.in_wbbj(&x) {
            return Err(ConfigError::new("start", "the starting element must lie in the set of minimal length J-coset representatives"));
        }
        Ok(x)
    }

    pub fn radius(&self, default: usize) -> usize {
        self.radius.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("3,2,3").unwrap(), vec![3, 2, 3]);
        assert_eq!(parse_list("323123").unwrap(), vec![3, 2, 3, 1, 2, 3]);
        assert_eq!(parse_list("").unwrap(), Vec::<usize>::new());
        assert!(parse_list("1,x").is_err());
    }

    #[test]
    fn weights_and_signs() {
        assert_eq!(parse_weights("2").unwrap(), [2, 2, 2]);
        assert_eq!(parse_weights("3,1,2").unwrap(), [3, 1, 2]);
        let s = parse_signs("1:-, 2n:+").unwrap();
        assert_eq!(s["2n"], "+");
        assert!(parse_signs("1-").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("alcove-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("job.toml");
        std::fs::write(&p, "type = \"A\"\nrank = 3\nJ = [1]\nradius = 4\n").unwrap();
        let args = JobArgs { config: Some(p), rank: Some(2), ..Default::default() };
        let cfg = args.resolve().unwrap();
        assert_eq!(cfg.label().unwrap(), "A2");
        assert_eq!(cfg.radius, Some(4));
        assert_eq!(cfg.j, Some(vec![1]));
    }
}
