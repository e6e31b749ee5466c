//! List and range parsing for command-line values such as `1-5,8,10-12`.

use std::str::FromStr;

use anyhow::{bail, Context, Result};

/// Parses a comma-separated list of integers and inclusive ranges.
/// Duplicates are dropped, first occurrence order kept.
pub fn int_list<T>(s: &str) -> Result<Vec<T>>
where
    T: FromStr + Copy + PartialOrd + PartialEq + TryFrom<u64>,
    <T as FromStr>::Err: std::error::Error + Send + Sync + 'static,
{
    let mut out: Vec<T> = Vec::new();
    for part in s.split(',').map(str::trim) {
        if part.is_empty() {
            bail!("empty item in list '{s}'");
        }
        if let Some((a, b)) = part.split_once('-') {
            let a: u64 = a
                .trim()
                .parse()
                .with_context(|| format!("bad range start in '{part}'"))?;
            let b: u64 = b.trim().parse().with_context(|| format!("bad range end in '{part}'"))?;
            if a > b {
                bail!("descending range '{part}'");
            }
            for v in a..=b {
                let v = T::try_from(v).map_err(|_| anyhow::anyhow!("value {v} out of range"))?;
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        } else {
            let v: T = part.parse().with_context(|| format!("bad integer '{part}'"))?;
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

pub fn float_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            let v: f64 = p.parse().with_context(|| format!("bad number '{p}'"))?;
            if !v.is_finite() || v < 0.0 {
                bail!("'{p}' must be a finite nonnegative number");
            }
            Ok(v)
        })
        .collect()
}

pub fn name_list(s: &str) -> Result<Vec<String>> {
    let v: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    if v.iter().any(String::is_empty) {
        bail!("empty item in list '{s}'");
    }
    Ok(v)
}
