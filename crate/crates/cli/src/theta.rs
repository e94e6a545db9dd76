use std::path::Path;

use anyhow::{bail, Context, Result};
use chowcfg::rational::parse_rational;
use chowcfg::stability::{parse_inline_weights, Preset, Stability};

/// Resolve `--theta`: a preset name, a JSON file, or inline weights `a,b,c`.
pub fn resolve(spec: &str, m: Option<usize>, epsilon: Option<&str>) -> Result<Stability> {
    let epsilon = epsilon.map(parse_rational).transpose()?;
    if let Ok(preset) = spec.parse::<Preset>() {
        let Some(m) = m else {
            bail!("--m is required with preset {spec:?}");
        };
        if preset == Preset::Canonical && epsilon.is_some() {
            bail!("--epsilon applies only to theta-plus and theta-minus");
        }
        return Ok(preset.build(m, epsilon)?);
    }
    if epsilon.is_some() {
        bail!("--epsilon applies only to presets");
    }
    let theta = if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        serde_json::from_str::<Stability>(&text).with_context(|| format!("parsing stability JSON in {spec}"))?
    } else if spec.contains(',') {
        parse_inline_weights(spec)?
    } else {
        bail!("{spec:?} is neither a preset (canonical, theta-plus, theta-minus), a file, nor inline weights");
    };
    if let Some(m) = m {
        if m != theta.arity() {
            bail!("--m {m} disagrees with the {} weights given", theta.arity());
        }
    }
    Ok(theta)
}
