//! graph6 and edge-list JSON encodings.

use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct EdgeList {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn to_json(g: &Graph) -> String {
    let doc = EdgeList { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() };
    serde_json::to_string(&doc).expect("edge list serializes")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let doc: EdgeList = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Graph::new(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v)))
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.extend([126, (n >> 12) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63]);
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ascii")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {bad} is not valid graph6")));
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::Parse("graph6 order field truncated or too large".into()));
        }
        let n = ((bytes[1] - 63) as usize) << 12 | ((bytes[2] - 63) as usize) << 6 | (bytes[3] - 63) as usize;
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != need {
        return Err(Error::Parse(format!("graph6 body has {} bytes, expected {need}", body.len())));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

/// Reads either encoding; JSON is recognized by a leading `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let t = text.trim_start();
    if t.starts_with('{') {
        from_json(t)
    } else {
        from_graph6(t.lines().next().unwrap_or(""))
    }
}

#[cfg(test)]
mod tests {
    use super::super::families::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        // Reference strings from the graph6 format description.
        assert_eq!(to_graph6(&complete(2)), "A_");
        assert_eq!(to_graph6(&path(4)), "Ch");
        assert_eq!(to_graph6(&cycle(5)), "Dhc");
        assert_eq!(from_graph6(">>graph6<<Dhc\n").unwrap(), cycle(5));
        assert!(from_graph6("D").is_err());
        assert!(from_graph6("").is_err());
    }

    #[test]
    fn json_form() {
        let g = from_json(r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#).unwrap();
        assert_eq!(g, path(4));
        assert_eq!(to_json(&g), r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#);
        assert!(from_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert_eq!(parse_graph("  {\"n\":1,\"edges\":[]}").unwrap().n(), 1);
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=64, seed in any::<u64>()) {
            let mut x = seed | 1;
            let mut edges = Vec::new();
            for v in 1..n {
                for u in 0..v {
                    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                    if x % 5 == 0 { edges.push((u, v)); }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(from_json(&to_json(&g)).unwrap(), g);
        }
    }
}
