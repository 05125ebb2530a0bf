//! JSON (`{"universe": [...], "relations": {"E": [[0, 1], ...]}}`) and
//! Graphviz encodings.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::{FinStructure, Signature, Vertex};
use crate::error::{Error, Result};

pub fn to_json(s: &FinStructure) -> Value {
    let relations: Map<String, Value> = s
        .tables()
        .iter()
        .map(|(name, table)| (name.clone(), json!(table.iter().collect::<Vec<_>>())))
        .collect();
    json!({
        "universe": s.vertices(),
        "relations": relations,
    })
}

/// Reads a structure over `signature`; missing relations are empty, unknown
/// ones are rejected.
pub fn from_json(signature: Arc<Signature>, value: &Value) -> Result<FinStructure> {
    let codec = |m: &str| Error::Codec(m.to_string());
    let vertex = |v: &Value| -> Result<Vertex> {
        v.as_u64()
            .and_then(|x| Vertex::try_from(x).ok())
            .ok_or_else(|| codec(&format!("{v} is not a vertex id")))
    };
    let universe = value
        .get("universe")
        .and_then(Value::as_array)
        .ok_or_else(|| codec("structure needs a `universe` array"))?
        .iter()
        .map(vertex)
        .collect::<Result<Vec<_>>>()?;
    let mut s = FinStructure::with_universe(signature, universe);
    if let Some(rels) = value.get("relations") {
        let rels = rels
            .as_object()
            .ok_or_else(|| codec("`relations` must be an object"))?;
        for (name, tuples) in rels {
            if s.signature().arity(name).is_none() {
                return Err(codec(&format!("unknown relation {name}")));
            }
            let tuples = tuples
                .as_array()
                .ok_or_else(|| codec(&format!("relation {name} must be a list of tuples")))?;
            for t in tuples {
                let t = t
                    .as_array()
                    .ok_or_else(|| codec(&format!("{t} is not a tuple")))?
                    .iter()
                    .map(vertex)
                    .collect::<Result<Vec<_>>>()?;
                s.add_tuple(name, t)?;
            }
        }
    }
    s.validate()?;
    Ok(s)
}

/// Undirected `graph` for the graph signature, otherwise a `digraph` with
/// one labelled arc per binary tuple (other arities are listed as comments).
pub fn to_dot(s: &FinStructure) -> String {
    let mut out = String::new();
    let graph = s.signature().is_graph();
    out.push_str(if graph {
        "graph G {\n"
    } else {
        "digraph G {\n"
    });
    for v in s.universe() {
        let _ = writeln!(out, "  {v};");
    }
    if graph {
        for (a, b) in s.edges() {
            let _ = writeln!(out, "  {a} -- {b};");
        }
    } else {
        for (name, table) in s.tables() {
            for t in table {
                if t.len() == 2 {
                    let _ = writeln!(out, "  {} -> {} [label=\"{name}\"];", t[0], t[1]);
                } else {
                    let _ = writeln!(out, "  // {name}{t:?}");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Reads the undirected subset of DOT that [`to_dot`] writes for graphs:
/// statements `v;` and `a -- b;`, attributes ignored.
pub fn from_dot(text: &str) -> Result<FinStructure> {
    let body = text
        .find('{')
        .zip(text.rfind('}'))
        .filter(|(open, close)| open < close)
        .map(|(open, close)| &text[open + 1..close])
        .ok_or_else(|| Error::Codec("DOT text needs a `{ ... }` body".into()))?;
    let parse = |tok: &str| -> Result<Vertex> {
        tok.trim()
            .trim_matches('"')
            .parse()
            .map_err(|_| Error::Codec(format!("`{}` is not a vertex id", tok.trim())))
    };
    let mut g = FinStructure::new(Signature::graph());
    let mut edges = Vec::new();
    for stmt in body.split([';', '\n']) {
        let stmt = stmt.split("//").next().unwrap_or("");
        let stmt = stmt.split('[').next().unwrap_or("").trim();
        if stmt.is_empty() || stmt.contains('=') {
            continue;
        }
        let nodes = stmt.split("--").map(parse).collect::<Result<Vec<_>>>()?;
        for &v in &nodes {
            g.add_vertex(v);
        }
        edges.extend(nodes.windows(2).map(|w| (w[0], w[1])));
    }
    for (a, b) in edges {
        g.add_edge(a, b)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let g = FinStructure::graph(0..4, &[(0, 1), (2, 3)]).unwrap();
        let v = to_json(&g);
        assert_eq!(v["universe"], json!([0, 1, 2, 3]));
        assert_eq!(from_json(Signature::graph(), &v).unwrap(), g);
        let l = FinStructure::linear_order(&[2, 0, 1]);
        assert_eq!(
            from_json(Signature::linear_order(), &to_json(&l)).unwrap(),
            l
        );
    }

    #[test]
    fn json_rejects_bad_input() {
        let sig = Signature::graph();
        assert!(from_json(sig.clone(), &json!({"relations": {}})).is_err());
        assert!(from_json(
            sig.clone(),
            &json!({"universe": [0], "relations": {"F": []}})
        )
        .is_err());
        // asymmetric edge
        assert!(from_json(
            sig.clone(),
            &json!({"universe": [0, 1], "relations": {"E": [[0, 1]]}})
        )
        .is_err());
        assert!(from_json(sig, &json!({"universe": [0], "relations": {"E": [[0, 5]]}})).is_err());
    }

    #[test]
    fn dot_roundtrip() {
        let g = FinStructure::graph(0..5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(from_dot(&to_dot(&g)).unwrap(), g);
        let h = from_dot("graph { a_label=1; 3 -- 4 -- 5 [color=red]; 9 }").unwrap();
        assert_eq!(h.edges(), vec![(3, 4), (4, 5)]);
        assert!(h.contains_vertex(9));
        assert!(from_dot("graph { x -- y }").is_err());
        assert!(to_dot(&FinStructure::linear_order(&[0, 1])).contains("label=\"lt\""));
    }
}
