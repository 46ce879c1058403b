//! Number rendering, tolerance handling, and atomic output writing.

use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// Environment variable naming the default directory for relative output
/// paths.
pub const OUT_DIR_ENV: &str = "VARBOUND_OUT_DIR";

/// Renders with 12 significant decimal digits, locale-independent, trailing
/// zeros trimmed; switches to scientific notation outside `[1e-4, 1e12)`.
/// Rendered values parse back to within the verification tolerances.
pub fn fmt_g12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp_str) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp_str.parse().expect("exponent parses");
    if !(-4..12).contains(&exp) {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    } else {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{v:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    }
}

/// The value rounded to 12 significant digits, for JSON payloads.
pub fn sig12(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    fmt_g12(v).parse().expect("g12 output parses back")
}

/// Where a document goes: stdout, or a file written atomically.
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    /// Resolves `--output`: relative paths land under `VARBOUND_OUT_DIR`
    /// when that variable is set.
    pub fn resolve(output: Option<&Path>) -> Self {
        match output {
            None => Sink::Stdout,
            Some(p) if p.is_relative() => match env::var_os(OUT_DIR_ENV) {
                Some(dir) => Sink::File(PathBuf::from(dir).join(p)),
                None => Sink::File(p.to_path_buf()),
            },
            Some(p) => Sink::File(p.to_path_buf()),
        }
    }

    /// Writes the full document: to stdout directly, or to a temporary file
    /// renamed over the target.
    pub fn write(&self, content: &str) -> io::Result<()> {
        match self {
            Sink::Stdout => {
                let mut out = io::stdout().lock();
                out.write_all(content.as_bytes())?;
                out.flush()
            }
            Sink::File(path) => {
                let file_name = path
                    .file_name()
                    .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "empty file name"))?
                    .to_os_string();
                let mut tmp_name = file_name;
                tmp_name.push(".tmp");
                let tmp = path.with_file_name(tmp_name);
                fs::write(&tmp, content)?;
                fs::rename(&tmp, path)
            }
        }
    }
}

/// Check tolerances used by the sweep and verification commands,
/// overridable with repeated `--tol name=value` flags.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// lower <= sum of variances <= upper, relative.
    pub sandwich_rel: f64,
    /// Norm-identity residuals, relative.
    pub identity_rel: f64,
    /// Exact collapse at a = 0 / b = 0, relative.
    pub saturation_rel: f64,
    /// Pure state vs projector lift agreement, relative.
    pub agreement_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            sandwich_rel: varbound_core::tol::SANDWICH_REL,
            identity_rel: varbound_core::tol::IDENTITY_REL,
            saturation_rel: varbound_core::tol::SATURATION_REL,
            agreement_rel: varbound_core::tol::SANDWICH_REL,
        }
    }
}

impl Tolerances {
    pub fn apply(&mut self, overrides: &[(String, f64)]) -> Result<(), String> {
        for (name, value) in overrides {
            if !value.is_finite() || *value <= 0.0 {
                return Err(format!("tolerance {name} must be positive, got {value}"));
            }
            match name.as_str() {
                "sandwich_rel" => self.sandwich_rel = *value,
                "identity_rel" => self.identity_rel = *value,
                "saturation_rel" => self.saturation_rel = *value,
                "agreement_rel" => self.agreement_rel = *value,
                other => {
                    return Err(format!(
                        "unknown tolerance `{other}` (expected sandwich_rel, identity_rel, saturation_rel, or agreement_rel)"
                    ))
                }
            }
        }
        Ok(())
    }
}
