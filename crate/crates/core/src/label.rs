//! Structured vertex labels.
//!
//! Labels stay structured all the way through products and line graphs, so a
//! vertex of `L(P_n x P_m)` still knows which pair of grid vertices it came
//! from, and family constructors can address vertices by coordinate.

use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A vertex label: an atomic index, a named coordinate like `g(1,2)`, a pair
/// for product vertices, or an unordered pair of labels for line-graph
/// vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexLabel {
    Int(u32),
    Sym(String, Vec<i32>),
    Pair(Box<VertexLabel>, Box<VertexLabel>),
    Edge(Box<VertexLabel>, Box<VertexLabel>),
}

impl VertexLabel {
    pub fn int(i: u32) -> Self {
        VertexLabel::Int(i)
    }

    pub fn sym(name: &str, indices: &[i32]) -> Self {
        VertexLabel::Sym(name.to_string(), indices.to_vec())
    }

    pub fn pair(a: VertexLabel, b: VertexLabel) -> Self {
        VertexLabel::Pair(Box::new(a), Box::new(b))
    }

    /// Line-graph vertex for the edge `{a, b}`; stored with the smaller
    /// endpoint first so equal edges compare equal.
    pub fn edge(a: VertexLabel, b: VertexLabel) -> Self {
        if a <= b {
            VertexLabel::Edge(Box::new(a), Box::new(b))
        } else {
            VertexLabel::Edge(Box::new(b), Box::new(a))
        }
    }

    /// Parses the string form of `Sym`: `"g:1:2"`, `"a:1"`, `"g':3"`.
    pub fn parse_sym(s: &str) -> Option<Self> {
        let mut parts = s.split(':');
        let name = parts.next()?;
        if name.is_empty() {
            return None;
        }
        let mut indices = Vec::new();
        for p in parts {
            indices.push(p.parse().ok()?);
        }
        Some(VertexLabel::Sym(name.to_string(), indices))
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Int(i) => write!(f, "{i}"),
            VertexLabel::Sym(name, idx) => {
                write!(f, "{name}")?;
                for i in idx {
                    write!(f, ":{i}")?;
                }
                Ok(())
            }
            VertexLabel::Pair(a, b) => write!(f, "({a},{b})"),
            VertexLabel::Edge(a, b) => write!(f, "{{{a},{b}}}"),
        }
    }
}

// JSON forms, chosen so the common cases stay compact:
//   Int(5)            -> 5
//   Sym("g",[1,2])    -> "g:1:2"
//   Pair(a,b)         -> [a, b]
//   Edge(u,v)         -> {"e": [u, v]}
impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            VertexLabel::Int(i) => serializer.serialize_u32(*i),
            VertexLabel::Sym(..) => serializer.serialize_str(&self.to_string()),
            VertexLabel::Pair(a, b) => (a, b).serialize(serializer),
            VertexLabel::Edge(a, b) => {
                use serde::ser::SerializeMap;
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("e", &(a, b))?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for VertexLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        from_value(&v).map_err(D::Error::custom)
    }
}

fn from_value(v: &serde_json::Value) -> Result<VertexLabel, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .map(VertexLabel::Int)
            .ok_or_else(|| format!("label index out of range: {n}")),
        serde_json::Value::String(s) => {
            VertexLabel::parse_sym(s).ok_or_else(|| format!("bad label string: {s:?}"))
        }
        serde_json::Value::Array(items) => {
            if items.len() != 2 {
                return Err(format!("pair label must have 2 entries, got {}", items.len()));
            }
            Ok(VertexLabel::pair(from_value(&items[0])?, from_value(&items[1])?))
        }
        serde_json::Value::Object(map) => {
            let inner = map.get("e").ok_or("object label must be {\"e\": [u, v]}")?;
            let items = inner.as_array().filter(|a| a.len() == 2).ok_or("edge label needs [u, v]")?;
            Ok(VertexLabel::edge(from_value(&items[0])?, from_value(&items[1])?))
        }
        _ => Err(format!("unsupported label value: {v}")),
    }
}
