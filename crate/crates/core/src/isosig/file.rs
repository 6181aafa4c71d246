use std::io::{BufRead, Write};

use super::SigError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigFormat {
    Native,
    External,
}

impl SigFormat {
    fn header(self) -> &'static str {
        match self {
            SigFormat::Native => "#format:native",
            SigFormat::External => "#format:external",
        }
    }
}

/// Reads a signature file: a `#format:native` or `#format:external` header
/// line, then one signature per line. A missing header means native.
pub fn read_sig_file(r: impl BufRead) -> Result<(SigFormat, Vec<String>), SigError> {
    let mut format = None;
    let mut sigs = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|e| SigError::Malformed(e.to_string()))?;
        let line = line.trim();
        if i == 0 && line.starts_with("#format:") {
            format = Some(match &line[8..] {
                "native" => SigFormat::Native,
                "external" => SigFormat::External,
                other => return Err(SigError::Malformed(format!("unknown format {other:?}"))),
            });
            continue;
        }
        if line.is_empty() {
            return Err(SigError::Malformed(format!("blank line {}", i + 1)));
        }
        sigs.push(line.to_string());
    }
    Ok((format.unwrap_or(SigFormat::Native), sigs))
}

pub fn write_sig_file<S: AsRef<str>>(mut w: impl Write, format: SigFormat, sigs: &[S]) -> std::io::Result<()> {
    writeln!(w, "{}", format.header())?;
    for s in sigs {
        writeln!(w, "{}", s.as_ref())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut buf = Vec::new();
        write_sig_file(&mut buf, SigFormat::External, &["cHIbbb0bRbpb", "eAMPcaabcddd+aoa+aAa8aQara"]).unwrap();
        let (f, sigs) = read_sig_file(&buf[..]).unwrap();
        assert_eq!(f, SigFormat::External);
        assert_eq!(sigs.len(), 2);
        assert!(read_sig_file(&b"#format:native\nabc\n\nabd\n"[..]).is_err());
    }
}
