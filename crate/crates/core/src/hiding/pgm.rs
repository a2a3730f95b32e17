//! Binary PGM (P5) with 8-bit samples.

use crate::error::{Error, Result};

use super::{CoverKind, CoverMedia};

fn skip_space_and_comments(bytes: &[u8], mut pos: usize) -> usize {
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
        } else {
            return pos;
        }
    }
}

fn header_number(bytes: &[u8], pos: &mut usize, what: &str) -> Result<usize> {
    *pos = skip_space_and_comments(bytes, *pos);
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Parse(format!("missing {what} in PGM header")));
    }
    std::str::from_utf8(&bytes[start..*pos])
        .expect("ascii digits")
        .parse()
        .map_err(|_| Error::Parse(format!("{what} out of range in PGM header")))
}

pub fn load_pgm(bytes: &[u8]) -> Result<CoverMedia> {
    if !bytes.starts_with(b"P5") {
        return Err(Error::Parse("not a binary PGM (expected P5 magic)".into()));
    }
    let mut pos = 2;
    if !bytes.get(pos).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(Error::Parse("malformed PGM magic".into()));
    }
    let width = header_number(bytes, &mut pos, "width")?;
    let height = header_number(bytes, &mut pos, "height")?;
    let maxval = header_number(bytes, &mut pos, "maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::Parse(format!(
            "unsupported PGM maxval {maxval} (only 8-bit samples)"
        )));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if !bytes.get(pos).is_some_and(|b| b.is_ascii_whitespace()) {
        return Err(Error::Parse("missing whitespace after PGM maxval".into()));
    }
    pos += 1;
    let size = width
        .checked_mul(height)
        .ok_or_else(|| Error::Parse("PGM dimensions overflow".into()))?;
    let raster = &bytes[pos..];
    if raster.len() < size {
        return Err(Error::Parse(format!(
            "truncated PGM raster: {} of {size} bytes",
            raster.len()
        )));
    }
    if raster.len() > size {
        return Err(Error::Parse(format!(
            "{} trailing bytes after PGM raster",
            raster.len() - size
        )));
    }
    CoverMedia::pgm(width, height, maxval as u16, raster.to_vec())
}

/// Serializes with the canonical header `P5\n<w> <h>\n<maxval>\n`.
pub fn save_pgm(cover: &CoverMedia) -> Result<Vec<u8>> {
    let CoverKind::Pgm {
        width,
        height,
        maxval,
    } = cover.kind()
    else {
        return Err(Error::InvalidArgument("cover is not a PGM image".into()));
    };
    let mut out = format!("P5\n{width} {height}\n{maxval}\n").into_bytes();
    out.extend_from_slice(cover.payload());
    Ok(out)
}
