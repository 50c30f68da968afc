//! graph6 text encoding: order byte, then the upper triangle column by column
//! packed six bits per printable character (offset 63).

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::Graph6("empty string".into()));
    };
    if let Some(bad) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::Graph6(format!(
            "byte {bad} outside the printable range 63..=126"
        )));
    }
    if first == 126 {
        return Err(Error::Graph6(format!("orders above {MAX_VERTICES} are not supported")));
    }
    let n = (first - 63) as usize;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = 1 + bits.div_ceil(6);
    if bytes.len() != expected {
        return Err(Error::Graph6(format!(
            "length mismatch: order {n} needs {expected} bytes, got {}",
            bytes.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let tail = bytes[expected - 1] - 63;
        if tail & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}
