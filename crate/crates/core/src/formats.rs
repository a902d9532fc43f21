//! graph6 and sparse6 encodings. Vertices are written in increasing id order
//! and read back as `0..n`.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet, MAX_VERTICES};

fn encode_n(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

fn decode_n(bytes: &[u8]) -> Result<(usize, &[u8])> {
    match bytes {
        [b'~', b'~', ..] => Err(Error::Parse("graph too large".into())),
        [b'~', a, b, c, rest @ ..] => {
            let n = [a, b, c]
                .iter()
                .try_fold(0usize, |acc, &&x| six(x).map(|d| acc << 6 | d as usize))?;
            Ok((n, rest))
        }
        [x, rest @ ..] => Ok((six(*x)? as usize, rest)),
        [] => Err(Error::Parse("empty input".into())),
    }
}

fn six(b: u8) -> Result<u8> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(Error::Parse(format!("byte {b} outside the printable range")))
    }
}

fn push_bits(bits: &[bool], out: &mut String) {
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for i in 0..6 {
            x = x << 1 | u8::from(chunk.get(i).copied().unwrap_or(false));
        }
        out.push((x + 63) as char);
    }
}

fn unpack_bits(bytes: &[u8]) -> Result<Vec<bool>> {
    let mut bits = Vec::with_capacity(bytes.len() * 6);
    for &b in bytes {
        let x = six(b)?;
        for i in (0..6).rev() {
            bits.push(x >> i & 1 == 1);
        }
    }
    Ok(bits)
}

pub fn to_graph6(g: &Graph) -> String {
    let vs = g.vertices().to_vec();
    let mut out = String::new();
    encode_n(vs.len(), &mut out);
    let mut bits = Vec::new();
    for j in 1..vs.len() {
        for i in 0..j {
            bits.push(g.has_edge(vs[i], vs[j]));
        }
    }
    push_bits(&bits, &mut out);
    out
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let (n, rest) = decode_n(s.as_bytes())?;
    crate::error::cap("vertex count", MAX_VERTICES, n)?;
    let need = n * n.saturating_sub(1) / 2;
    if rest.len() != need.div_ceil(6) {
        return Err(Error::Parse("graph6 body has the wrong length".into()));
    }
    let bits = unpack_bits(rest)?;
    let mut g = Graph::edgeless(VertexSet::range(n));
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                g.add_edge(VertexId::of(i), VertexId::of(j))?;
            }
            k += 1;
        }
    }
    Ok(g)
}

fn sparse6_width(n: usize) -> usize {
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

fn push_value(x: usize, k: usize, bits: &mut Vec<bool>) {
    for i in (0..k).rev() {
        bits.push(x >> i & 1 == 1);
    }
}

pub fn to_sparse6(g: &Graph) -> String {
    let vs = g.vertices().to_vec();
    let n = vs.len();
    let pos = |v: VertexId| vs.binary_search(&v).expect("vertex of g");
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (a, b) = (pos(a), pos(b));
            (a.max(b), a.min(b))
        })
        .collect();
    edges.sort_unstable();
    let k = sparse6_width(n);
    let mut bits = Vec::new();
    let mut cur = 0;
    for (v, u) in edges {
        if v == cur {
            bits.push(false);
            push_value(u, k, &mut bits);
        } else if v == cur + 1 {
            cur += 1;
            bits.push(true);
            push_value(u, k, &mut bits);
        } else {
            cur = v;
            bits.push(true);
            push_value(v, k, &mut bits);
            bits.push(false);
            push_value(u, k, &mut bits);
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && n == (1 << k) && pad >= k && cur + 1 < n {
        bits.push(false);
    }
    while bits.len() % 6 != 0 {
        bits.push(true);
    }
    let mut out = String::from(":");
    encode_n(n, &mut out);
    push_bits(&bits, &mut out);
    out
}

pub fn from_sparse6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>sparse6<<").unwrap_or(s);
    let body = s
        .strip_prefix(':')
        .ok_or_else(|| Error::Parse("sparse6 must start with ':'".into()))?;
    let (n, rest) = decode_n(body.as_bytes())?;
    crate::error::cap("vertex count", MAX_VERTICES, n)?;
    let bits = unpack_bits(rest)?;
    let k = sparse6_width(n);
    let mut g = Graph::edgeless(VertexSet::range(n));
    let mut v = 0usize;
    let mut i = 0;
    while i + 1 + k <= bits.len() {
        let b = bits[i];
        let x = bits[i + 1..i + 1 + k]
            .iter()
            .fold(0usize, |acc, &bit| acc << 1 | usize::from(bit));
        i += 1 + k;
        if b {
            v += 1;
        }
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            if x == v {
                return Err(Error::Parse("loops are not supported".into()));
            }
            let (a, c) = (VertexId::of(x), VertexId::of(v));
            if g.has_edge(a, c) {
                return Err(Error::Parse("parallel edges are not supported".into()));
            }
            g.add_edge(a, c)?;
        }
    }
    Ok(g)
}

/// Reads graph6 or sparse6 (recognized by the leading ':').
pub fn parse_graph(s: &str) -> Result<Graph> {
    let t = s.trim();
    if t.starts_with(':') || t.starts_with(">>sparse6<<") {
        from_sparse6(t)
    } else {
        from_graph6(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_graph6_vector() {
        // Edges ac, ae, bd, de on five vertices.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn known_sparse6_vector() {
        // The example from the format description: 7 vertices, edges
        // 0-1, 0-2, 1-2, 5-6.
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 2), (5, 6)]).unwrap();
        assert_eq!(from_sparse6(":Fa@x^").unwrap(), g);
        assert_eq!(from_sparse6(&to_sparse6(&g)).unwrap(), g);
    }

    #[test]
    fn large_headers() {
        let n = 64;
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        assert_eq!(from_sparse6(&to_sparse6(&g)).unwrap(), g);
    }

    #[test]
    fn empty_and_errors() {
        assert_eq!(from_graph6("?").unwrap().order(), 0);
        assert!(from_graph6("D").is_err());
        assert!(from_sparse6("Fa@x^").is_err());
    }
}
