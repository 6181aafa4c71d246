use super::SigError;

const CHARS: &[u8; 64] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-";

pub(crate) fn encode_char(v: usize) -> char {
    CHARS[v] as char
}

pub(crate) fn decode_char(c: u8) -> Result<usize, SigError> {
    match c {
        b'a'..=b'z' => Ok((c - b'a') as usize),
        b'A'..=b'Z' => Ok((c - b'A') as usize + 26),
        b'0'..=b'9' => Ok((c - b'0') as usize + 52),
        b'+' => Ok(62),
        b'-' => Ok(63),
        _ => Err(SigError::Malformed(format!("character {:?} is outside the alphabet", c as char))),
    }
}

/// Appends `v` as `width` little-endian base-64 digits.
pub(crate) fn push_value(out: &mut String, mut v: usize, width: usize) {
    for _ in 0..width {
        out.push(encode_char(v & 63));
        v >>= 6;
    }
}

/// Cursor over a signature string.
pub(crate) struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Reader { bytes: s.as_bytes(), pos: 0 }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    pub(crate) fn next(&mut self) -> Result<usize, SigError> {
        let c = *self.bytes.get(self.pos).ok_or_else(|| SigError::Malformed("truncated".into()))?;
        self.pos += 1;
        decode_char(c)
    }

    pub(crate) fn value(&mut self, width: usize) -> Result<usize, SigError> {
        let mut v = 0usize;
        for i in 0..width {
            v |= self.next()? << (6 * i);
        }
        Ok(v)
    }

    /// Simplex count header: one character, or `-`, a width character and
    /// that many digits for large counts.
    pub(crate) fn size_header(&mut self) -> Result<(usize, usize), SigError> {
        let first = self.next()?;
        if first < 63 {
            return Ok((first, 1));
        }
        let width = self.next()?;
        if width == 0 || width > 8 {
            return Err(SigError::Malformed("bad size width".into()));
        }
        Ok((self.value(width)?, width))
    }
}

/// Width needed to write values up to `max` inclusive.
pub(crate) fn width_for(max: usize) -> usize {
    let mut w = 1;
    while max >> (6 * w) != 0 {
        w += 1;
    }
    w
}

pub(crate) fn push_size_header(out: &mut String, n: usize) -> usize {
    if n < 63 {
        out.push(encode_char(n));
        1
    } else {
        let w = width_for(n);
        out.push(encode_char(63));
        out.push(encode_char(w));
        push_value(out, n, w);
        w
    }
}
