use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{ensure, Context, Result};

use crate::experiment::{ExperimentResult, ExperimentRun};

/// Column order is frozen.
pub const CSV_HEADER: &str = "n,g,M,wMin,wMax,mMin,mMax,gaAdm,gaWl,baseAdm,baseWl,seed,seconds";

pub fn csv(result: &ExperimentResult, seconds: &[f64]) -> Result<String> {
    ensure!(
        seconds.len() == result.points.len(),
        "{} timings for {} points",
        seconds.len(),
        result.points.len()
    );
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (p, s) in result.points.iter().zip(seconds) {
        let b = &p.bounds;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
            p.n,
            p.granularity,
            p.patterns,
            b.w_min,
            b.w_max,
            b.m_min,
            b.m_max,
            p.ga.adms,
            p.ga.wavelengths,
            p.baseline.adms,
            p.baseline.wavelengths,
            p.seed,
            s
        )?;
    }
    Ok(out)
}

pub fn to_json(result: &ExperimentResult) -> Result<String> {
    let mut text = serde_json::to_string_pretty(result)?;
    text.push('\n');
    Ok(text)
}

pub fn from_json(text: &str) -> Result<ExperimentResult> {
    Ok(serde_json::from_str(text)?)
}

pub fn load_result(path: &Path) -> Result<ExperimentResult> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes `result.json` and `results.csv` into `dir`, creating it.
pub fn write_outputs(run: &ExperimentRun, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let json = dir.join("result.json");
    let table = dir.join("results.csv");
    std::fs::write(&json, to_json(&run.result)?).with_context(|| format!("writing {}", json.display()))?;
    std::fs::write(&table, csv(&run.result, &run.seconds)?).with_context(|| format!("writing {}", table.display()))?;
    Ok((json, table))
}
