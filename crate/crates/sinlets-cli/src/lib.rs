//! Library side of the command-line tool: file formats, command
//! implementations, and the error/exit-code model. The thin binary in
//! `main.rs` adds argument parsing on top.

pub mod commands;
pub mod formats;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Io(String),
    Numeric(sinlets::Error),
}

impl CliError {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) | CliError::Io(_) => 3,
            CliError::Numeric(err) => match err {
                sinlets::Error::Aliasing { .. } | sinlets::Error::IllPosed { .. } => 5,
                _ => 4,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Parse(msg) => write!(f, "parse: {msg}"),
            CliError::Io(msg) => write!(f, "io: {msg}"),
            CliError::Numeric(err) => write!(f, "{err}"),
        }
    }
}

/// Uniform evaluation grid, given as START:STOP:COUNT.
#[derive(Debug, Clone)]
pub struct GridSpec {
    start: f64,
    stop: f64,
    count: usize,
}

impl GridSpec {
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || CliError::Usage(format!("bad grid `{spec}` (want START:STOP:COUNT)"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].parse().map_err(|_| bad())?;
        let count: usize = parts[2].parse().map_err(|_| bad())?;
        if !(start < stop) || count < 2 {
            return Err(CliError::Usage(format!(
                "bad grid `{spec}`: need START < STOP and COUNT >= 2"
            )));
        }
        Ok(GridSpec { start, stop, count })
    }

    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        Ok((0..self.count).map(|i| self.start + step * i as f64).collect())
    }
}

/// Member indices: either an inclusive range `0..7` or a comma list `0,2,5`.
pub fn parse_members(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad member list `{spec}` (want `A..B` or `a,b,c`)"));
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: usize = lo.parse().map_err(|_| bad())?;
        let hi: usize = hi.parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
        .collect()
}


