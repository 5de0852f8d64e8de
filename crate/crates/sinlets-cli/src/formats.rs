//! On-disk formats: two-column signal files, coefficient files (1D and
//! image), and 8-bit binary PGM images.
//!
//! All numeric output is written with 17 significant digits so values
//! round-trip bit-exactly, and every writer is deterministic, so
//! write -> read -> write is byte-identical.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sinlets::transform::BasisKind;
use sinlets::{
    Basis2D64, CoefficientVector64, GrayImage64, ImageCoefficients64, PhaseKind, SampledSignal64,
    SinletBasis64,
};

use crate::CliError;

const SIGNAL_HEADER: &str = "# sinlets signal v1: time,value";
const COEFF_MAGIC: &str = "sinlet-coefficients v1";
const IMAGE_COEFF_MAGIC: &str = "sinlet-image-coefficients v1";

/// 17-significant-digit decimal, enough to reproduce any f64 exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_float(s: &str, path: &Path, line: usize) -> Result<f64, CliError> {
    s.trim().parse::<f64>().map_err(|_| {
        CliError::parse(format!("{}:{line}: expected a number, got `{s}`", path.display()))
    })
}

pub fn write_signal(path: &Path, signal: &SampledSignal64) -> Result<(), CliError> {
    let mut out = String::new();
    out.push_str(SIGNAL_HEADER);
    out.push('\n');
    for (t, v) in signal.iter() {
        let _ = writeln!(out, "{},{}", fmt_float(t), fmt_float(v));
    }
    fs::write(path, out).map_err(|e| CliError::io(path, e))
}

pub fn read_signal(path: &Path) -> Result<SampledSignal64, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty());
        let t = fields.next().ok_or_else(|| {
            CliError::parse(format!("{}:{line_no}: missing time column", path.display()))
        })?;
        let v = fields.next().ok_or_else(|| {
            CliError::parse(format!("{}:{line_no}: missing value column", path.display()))
        })?;
        if fields.next().is_some() {
            return Err(CliError::parse(format!(
                "{}:{line_no}: expected two columns",
                path.display()
            )));
        }
        let t = parse_float(t, path, line_no)?;
        if let Some(&prev) = times.last() {
            if t <= prev {
                return Err(CliError::parse(format!(
                    "{}:{line_no}: sample times must be strictly increasing",
                    path.display()
                )));
            }
        }
        times.push(t);
        values.push(parse_float(v, path, line_no)?);
    }
    SampledSignal64::new(times, values)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

pub fn write_coefficients(path: &Path, coeffs: &CoefficientVector64) -> Result<(), CliError> {
    let basis = coeffs.basis();
    let mut out = String::new();
    let _ = writeln!(out, "{COEFF_MAGIC}");
    let _ = writeln!(out, "family {}", basis.phase().kind());
    let _ = writeln!(out, "kind {}", coeffs.kind());
    let _ = writeln!(out, "t0 {}", fmt_float(basis.center()));
    let _ = writeln!(out, "sigma {}", fmt_float(basis.width()));
    let _ = writeln!(out, "count {}", coeffs.len());
    for &c in coeffs.coeffs() {
        let _ = writeln!(out, "{}", fmt_float(c));
    }
    fs::write(path, out).map_err(|e| CliError::io(path, e))
}

struct HeaderReader<'a> {
    path: &'a Path,
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> HeaderReader<'a> {
    fn next_content(&mut self) -> Result<(usize, &'a str), CliError> {
        for (idx, raw) in self.lines.by_ref() {
            let line = raw.trim();
            if !line.is_empty() && !line.starts_with('#') {
                return Ok((idx + 1, line));
            }
        }
        Err(CliError::parse(format!(
            "{}: unexpected end of file",
            self.path.display()
        )))
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str), CliError> {
        let (line_no, line) = self.next_content()?;
        match line.split_once(' ') {
            Some((k, rest)) if k == key => Ok((line_no, rest.trim())),
            _ => Err(CliError::parse(format!(
                "{}:{line_no}: expected `{key} <value>`, got `{line}`",
                self.path.display()
            ))),
        }
    }
}

fn parse_family(s: &str, path: &Path, line: usize) -> Result<PhaseKind, CliError> {
    s.parse::<PhaseKind>()
        .map_err(|e| CliError::parse(format!("{}:{line}: {e}", path.display())))
}

pub fn read_coefficients(path: &Path) -> Result<CoefficientVector64, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = HeaderReader {
        path,
        lines: text.lines().enumerate(),
    };

    let (line_no, magic) = reader.next_content()?;
    if magic != COEFF_MAGIC {
        return Err(CliError::parse(format!(
            "{}:{line_no}: unknown format `{magic}` (expected `{COEFF_MAGIC}`)",
            path.display()
        )));
    }
    let (l, family) = reader.field("family")?;
    let family = parse_family(family, path, l)?;
    let (l, kind) = reader.field("kind")?;
    let kind = kind
        .parse::<BasisKind>()
        .map_err(|e| CliError::parse(format!("{}:{l}: {e}", path.display())))?;
    let (l, t0) = reader.field("t0")?;
    let t0 = parse_float(t0, path, l)?;
    let (l, sigma) = reader.field("sigma")?;
    let sigma = parse_float(sigma, path, l)?;
    let (l, count) = reader.field("count")?;
    let count: usize = count.parse().map_err(|_| {
        CliError::parse(format!("{}:{l}: invalid coefficient count", path.display()))
    })?;

    let mut coeffs = Vec::with_capacity(count);
    for _ in 0..count {
        let (l, value) = reader.next_content()?;
        coeffs.push(parse_float(value, path, l)?);
    }
    if let Ok((l, extra)) = reader.next_content() {
        return Err(CliError::parse(format!(
            "{}:{l}: trailing content `{extra}` after {count} coefficients",
            path.display()
        )));
    }

    let basis = SinletBasis64::from_params(family, t0, sigma).map_err(CliError::Numeric)?;
    CoefficientVector64::new(kind, basis, coeffs).map_err(CliError::Numeric)
}

pub fn write_image_coefficients(
    path: &Path,
    coeffs: &ImageCoefficients64,
) -> Result<(), CliError> {
    let basis = coeffs.basis();
    let mut out = String::new();
    let _ = writeln!(out, "{IMAGE_COEFF_MAGIC}");
    let _ = writeln!(out, "family {}", basis.horizontal().phase().kind());
    let _ = writeln!(out, "center-x {}", fmt_float(basis.horizontal().center()));
    let _ = writeln!(out, "sigma-x {}", fmt_float(basis.horizontal().width()));
    let _ = writeln!(out, "center-y {}", fmt_float(basis.vertical().center()));
    let _ = writeln!(out, "sigma-y {}", fmt_float(basis.vertical().width()));
    let _ = writeln!(out, "k1 {}", coeffs.k1());
    let _ = writeln!(out, "k2 {}", coeffs.k2());
    let _ = writeln!(out, "width {}", coeffs.source_width());
    let _ = writeln!(out, "height {}", coeffs.source_height());
    for &c in coeffs.coeffs() {
        let _ = writeln!(out, "{}", fmt_float(c));
    }
    fs::write(path, out).map_err(|e| CliError::io(path, e))
}

pub fn read_image_coefficients(path: &Path) -> Result<ImageCoefficients64, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = HeaderReader {
        path,
        lines: text.lines().enumerate(),
    };

    let (line_no, magic) = reader.next_content()?;
    if magic != IMAGE_COEFF_MAGIC {
        return Err(CliError::parse(format!(
            "{}:{line_no}: unknown format `{magic}` (expected `{IMAGE_COEFF_MAGIC}`)",
            path.display()
        )));
    }
    let (l, family) = reader.field("family")?;
    let family = parse_family(family, path, l)?;
    let float_field = |key: &str, reader: &mut HeaderReader| -> Result<f64, CliError> {
        let (l, v) = reader.field(key)?;
        parse_float(v, path, l)
    };
    let cx = float_field("center-x", &mut reader)?;
    let sx = float_field("sigma-x", &mut reader)?;
    let cy = float_field("center-y", &mut reader)?;
    let sy = float_field("sigma-y", &mut reader)?;
    let int_field = |key: &str, reader: &mut HeaderReader| -> Result<usize, CliError> {
        let (l, v) = reader.field(key)?;
        v.parse()
            .map_err(|_| CliError::parse(format!("{}:{l}: invalid integer", path.display())))
    };
    let k1 = int_field("k1", &mut reader)?;
    let k2 = int_field("k2", &mut reader)?;
    let width = int_field("width", &mut reader)?;
    let height = int_field("height", &mut reader)?;

    let mut coeffs = Vec::with_capacity(k1 * k2);
    for _ in 0..k1 * k2 {
        let (l, value) = reader.next_content()?;
        coeffs.push(parse_float(value, path, l)?);
    }

    let hx = SinletBasis64::from_params(family, cx, sx).map_err(CliError::Numeric)?;
    let vy = SinletBasis64::from_params(family, cy, sy).map_err(CliError::Numeric)?;
    let basis = Basis2D64::new(hx, vy).map_err(CliError::Numeric)?;
    ImageCoefficients64::new(basis, k1, k2, width, height, coeffs).map_err(CliError::Numeric)
}

/// 8-bit binary PGM (P5, maxval 255); pixel byte v maps to intensity v/255.
pub fn read_pgm(path: &Path) -> Result<GrayImage64, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let mut pos = 0usize;

    let mut token = |bytes: &[u8]| -> Result<String, CliError> {
        // skip whitespace and '#' comments
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                break;
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(CliError::parse(format!(
                "{}: truncated PGM header",
                path.display()
            )));
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };

    let magic = token(&bytes)?;
    if magic != "P5" {
        return Err(CliError::parse(format!(
            "{}: not a binary PGM (magic `{magic}`, expected P5)",
            path.display()
        )));
    }
    let width: usize = token(&bytes)?
        .parse()
        .map_err(|_| CliError::parse(format!("{}: bad width", path.display())))?;
    let height: usize = token(&bytes)?
        .parse()
        .map_err(|_| CliError::parse(format!("{}: bad height", path.display())))?;
    let maxval: usize = token(&bytes)?
        .parse()
        .map_err(|_| CliError::parse(format!("{}: bad maxval", path.display())))?;
    if maxval != 255 {
        return Err(CliError::parse(format!(
            "{}: unsupported maxval {maxval} (only 8-bit, 255)",
            path.display()
        )));
    }
    pos += 1; // single whitespace byte after maxval
    let expected = width * height;
    let data = &bytes[pos..];
    if data.len() < expected {
        return Err(CliError::parse(format!(
            "{}: pixel payload holds {} bytes, expected {expected}",
            path.display(),
            data.len()
        )));
    }
    let pixels: Vec<f64> = data[..expected].iter().map(|&b| b as f64 / 255.0).collect();
    GrayImage64::new(width, height, pixels).map_err(CliError::Numeric)
}

/// Raw reconstruction values are clamped into [0, 1] here, at the file
/// boundary, and quantized to 8 bits.
pub fn write_pgm(path: &Path, width: usize, height: usize, pixels: &[f64]) -> Result<(), CliError> {
    assert_eq!(pixels.len(), width * height);
    let mut out = Vec::with_capacity(32 + pixels.len());
    out.extend_from_slice(format!("P5\n{width} {height}\n255\n").as_bytes());
    for &p in pixels {
        let clamped = p.clamp(0.0, 1.0);
        out.push((clamped * 255.0).round() as u8);
    }
    fs::write(path, out).map_err(|e| CliError::io(path, e))
}
