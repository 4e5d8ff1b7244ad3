//! Run configuration: a single JSON key-value tree, loadable from a file,
//! with every key overridable by `--set key.path=value` flags and the most
//! common knobs exposed as dedicated flags. Unknown keys fail fast with the
//! offending path.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub n: usize,
    pub h: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { n: 1001, h: 0.05 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PotentialConfig {
    /// "none" | "delta" | "indicator_origin" | "square_well" | "harmonic"
    pub kind: String,
    pub tau: f64,
    pub height: f64,
    pub half_width: f64,
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig {
            kind: "delta".into(),
            tau: -2.0,
            height: 1.0,
            half_width: 0.1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleConfig {
    pub half_length: f64,
    pub strength: f64,
    /// "barrier" | "well"
    pub kind: String,
    /// "even" | "odd"
    pub parity: String,
    pub count: usize,
    /// extra parameters for the multidimensional formulas
    pub eps_w: f64,
    pub sigma: f64,
    pub omega: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            half_length: 5.0,
            strength: 3.0,
            kind: "barrier".into(),
            parity: "even".into(),
            count: 4,
            eps_w: 0.1,
            sigma: 1.0,
            omega: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WallsConfig {
    pub enabled: bool,
    pub half_length: f64,
    pub height: f64,
}

impl Default for WallsConfig {
    fn default() -> Self {
        WallsConfig {
            enabled: false,
            half_length: 5.0,
            height: 1e6,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NetConfig {
    /// "well_widths" | "chi" | "constant"
    pub kind: String,
    pub widths: Vec<f64>,
    pub tolerance: f64,
}

impl Default for NetConfig {
    fn default() -> Self {
        NetConfig {
            kind: "well_widths".into(),
            widths: vec![0.4, 0.2, 0.1, 0.05],
            tolerance: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolveConfig {
    /// "gaussian" | "delta" | "eigenstate"
    pub state: String,
    pub sigma: f64,
    pub eigenstate: usize,
    pub t_max: f64,
    pub steps: usize,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        EvolveConfig {
            state: "gaussian".into(),
            sigma: 1.0,
            eigenstate: 0,
            t_max: 10.0,
            steps: 100,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: String,
    pub eigenfunctions: Vec<usize>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: "out".into(),
            eigenfunctions: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub grid: GridConfig,
    /// "compact" | "paper_literal"
    pub laplacian: String,
    pub potential: PotentialConfig,
    pub oracle: OracleConfig,
    pub walls: WallsConfig,
    pub stages: Vec<[f64; 2]>,
    pub net: NetConfig,
    pub evolve: EvolveConfig,
    pub output: OutputConfig,
    pub seed: Option<u64>,
    pub workers: usize,
}

impl RunConfig {
    pub fn defaults() -> RunConfig {
        RunConfig {
            laplacian: "compact".into(),
            stages: vec![[501.0, 0.1], [1001.0, 0.05], [2001.0, 0.025]],
            workers: 1,
            ..Default::default()
        }
    }

    /// Seed precedence: explicit config value, then `HFQM_SEED`, then the
    /// library default.
    pub fn resolved_seed(&self) -> u64 {
        self.seed
            .or_else(|| std::env::var("HFQM_SEED").ok().and_then(|s| s.parse().ok()))
            .unwrap_or(hfqm_core::DEFAULT_SEED)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.grid.n < 3 || self.grid.n % 2 == 0 {
            return Err(format!(
                "grid.n = {} must be odd and at least 3",
                self.grid.n
            ));
        }
        if !(self.grid.h > 0.0) {
            return Err(format!("grid.h = {} must be positive", self.grid.h));
        }
        match self.laplacian.as_str() {
            "compact" | "paper_literal" => {}
            other => return Err(format!("laplacian = `{other}` (compact | paper_literal)")),
        }
        match self.potential.kind.as_str() {
            "none" | "delta" | "indicator_origin" | "square_well" | "harmonic" => {}
            other => return Err(format!(
                "potential.kind = `{other}` (none | delta | indicator_origin | square_well | harmonic)"
            )),
        }
        if !self.potential.tau.is_finite() {
            return Err(format!("potential.tau = {}", self.potential.tau));
        }
        match self.oracle.kind.as_str() {
            "barrier" | "well" => {}
            other => return Err(format!("oracle.kind = `{other}` (barrier | well)")),
        }
        match self.oracle.parity.as_str() {
            "even" | "odd" => {}
            other => return Err(format!("oracle.parity = `{other}` (even | odd)")),
        }
        match self.net.kind.as_str() {
            "well_widths" | "chi" | "constant" => {}
            other => {
                return Err(format!(
                    "net.kind = `{other}` (well_widths | chi | constant)"
                ))
            }
        }
        match self.evolve.state.as_str() {
            "gaussian" | "delta" | "eigenstate" => {}
            other => {
                return Err(format!(
                    "evolve.state = `{other}` (gaussian | delta | eigenstate)"
                ))
            }
        }
        if self.workers == 0 {
            return Err("workers must be at least 1".into());
        }
        for (i, s) in self.stages.iter().enumerate() {
            let n = s[0];
            if n.fract() != 0.0 || n < 3.0 || (n as usize) % 2 == 0 || !(s[1] > 0.0) {
                return Err(format!(
                    "stages[{i}] = [{}, {}] is not a valid (odd n, h)",
                    s[0], s[1]
                ));
            }
        }
        Ok(())
    }

    pub fn stage_list(&self) -> Result<Vec<hfqm_core::Stage>, String> {
        self.stages
            .iter()
            .map(|s| hfqm_core::Stage::new(s[0] as usize, s[1]).map_err(|e| e.to_string()))
            .collect()
    }
}

/// Load a config: defaults, optionally merged with a JSON file, then
/// `--set` overrides applied in order.
pub fn load(path: Option<&str>, sets: &[String]) -> Result<RunConfig, String> {
    let mut tree = serde_json::to_value(RunConfig::defaults()).expect("defaults serialize");
    if let Some(p) = path {
        let text = std::fs::read_to_string(p).map_err(|e| format!("reading {p}: {e}"))?;
        let file_tree: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| format!("parsing {p}: {e}"))?;
        merge(&mut tree, &file_tree);
    }
    for set in sets {
        let (path, value) = set
            .split_once('=')
            .ok_or_else(|| format!("--set `{set}` is not of the form key.path=value"))?;
        let parsed: serde_json::Value = serde_json::from_str(value)
            .unwrap_or_else(|_| serde_json::Value::String(value.to_string()));
        set_path(&mut tree, path, parsed)?;
    }
    let cfg: RunConfig =
        serde_json::from_value(tree).map_err(|e| format!("invalid configuration: {e}"))?;
    cfg.validate()?;
    Ok(cfg)
}

fn merge(base: &mut serde_json::Value, overlay: &serde_json::Value) {
    match (base, overlay) {
        (serde_json::Value::Object(b), serde_json::Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        (slot, v) => *slot = v.clone(),
    }
}

fn set_path(
    tree: &mut serde_json::Value,
    path: &str,
    value: serde_json::Value,
) -> Result<(), String> {
    let mut cur = tree;
    let parts: Vec<&str> = path.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let obj = cur
            .as_object_mut()
            .ok_or_else(|| format!("`{}` is not an object", parts[..i].join(".")))?;
        if i + 1 == parts.len() {
            obj.insert(part.to_string(), value);
            return Ok(());
        }
        cur = obj
            .entry(part.to_string())
            .or_insert_with(|| serde_json::Value::Object(Default::default()));
    }
    Err(format!("empty key path `{path}`"))
}
