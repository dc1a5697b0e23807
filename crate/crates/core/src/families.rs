//! Constructors for the named graph families arising as (and around) the
//! connected components of line graphs of categorical products of paths.
//!
//! Every family is a diagonal grid core plus a small attachment gadget. The
//! core has `rows` rows (2 for the three-row product, 3 for four, 4 for five)
//! and a chosen number of columns; row-adjacent, column-adjacent, and
//! crossing-diagonal pairs at odd `i + j` are the edges. The plain families
//! sit on `2n+1` columns, the tilde families on `2n+2`. All edge sets come
//! from these closed-form index rules, never from pictures.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::iso;
use crate::label::VertexLabel;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family {0} is not defined for m={1}, n={2}")]
    Undefined(FamilyName, u8, i64),
    #[error("bad family spec {0:?} (expected Name:m:n, e.g. Gamma:5:2)")]
    BadSpec(String),
    #[error("product side must be at least 2, got {0}")]
    ProductTooSmall(usize),
    #[error("expected exactly 2 components of L(P_{n} x P_{m}), found {found}")]
    ComponentCount { n: usize, m: u8, found: usize },
    #[error("component of L(P_{n} x P_{m}) does not match {family}")]
    ComponentMismatch {
        n: usize,
        m: u8,
        family: FamilyId,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FamilyName {
    Gamma,
    Lambda,
    GammaTilde,
    LambdaTilde,
    A,
    B,
    C,
    D,
    E,
    F,
    ATilde,
    BTilde,
    CTilde,
    DTilde,
    ETilde,
    FTilde,
}

impl FamilyName {
    pub const ALL: [FamilyName; 16] = [
        FamilyName::Gamma,
        FamilyName::Lambda,
        FamilyName::GammaTilde,
        FamilyName::LambdaTilde,
        FamilyName::A,
        FamilyName::B,
        FamilyName::C,
        FamilyName::D,
        FamilyName::E,
        FamilyName::F,
        FamilyName::ATilde,
        FamilyName::BTilde,
        FamilyName::CTilde,
        FamilyName::DTilde,
        FamilyName::ETilde,
        FamilyName::FTilde,
    ];

    pub fn is_tilde(self) -> bool {
        matches!(
            self,
            FamilyName::GammaTilde
                | FamilyName::LambdaTilde
                | FamilyName::ATilde
                | FamilyName::BTilde
                | FamilyName::CTilde
                | FamilyName::DTilde
                | FamilyName::ETilde
                | FamilyName::FTilde
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Gamma => "Gamma",
            FamilyName::Lambda => "Lambda",
            FamilyName::GammaTilde => "GammaTilde",
            FamilyName::LambdaTilde => "LambdaTilde",
            FamilyName::A => "A",
            FamilyName::B => "B",
            FamilyName::C => "C",
            FamilyName::D => "D",
            FamilyName::E => "E",
            FamilyName::F => "F",
            FamilyName::ATilde => "ATilde",
            FamilyName::BTilde => "BTilde",
            FamilyName::CTilde => "CTilde",
            FamilyName::DTilde => "DTilde",
            FamilyName::ETilde => "ETilde",
            FamilyName::FTilde => "FTilde",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or(())
    }
}

/// A family member: name, the product height `m`, and the index `n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FamilyId {
    pub name: FamilyName,
    pub m: u8,
    pub n: i64,
}

impl FamilyId {
    pub fn new(name: FamilyName, m: u8, n: i64) -> Result<Self, FamilyError> {
        let id = FamilyId { name, m, n };
        if id.is_defined() {
            Ok(id)
        } else {
            Err(FamilyError::Undefined(name, m, n))
        }
    }

    /// Which (name, m, n) combinations exist. The five-row B and BTilde
    /// start at n = -1 (standalone gadgets); tilde families exist for m = 5
    /// plus LambdaTilde for m = 3.
    pub fn is_defined(&self) -> bool {
        use FamilyName::*;
        let min_n = match self.name {
            B | BTilde if self.m == 5 => -1,
            _ => 0,
        };
        if self.n < min_n {
            return false;
        }
        match self.m {
            5 => true,
            4 => matches!(self.name, Gamma | Lambda | A | B | C | D),
            3 => matches!(self.name, Gamma | Lambda | A | LambdaTilde),
            _ => false,
        }
    }

    /// All families defined for a given m.
    pub fn names_for(m: u8) -> Vec<FamilyName> {
        FamilyName::ALL
            .into_iter()
            .filter(|&name| (FamilyId { name, m, n: 0 }).is_defined())
            .collect()
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.name, self.m, self.n)
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let bad = || FamilyError::BadSpec(s.to_string());
        let mut parts = s.split(':');
        let name: FamilyName = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let m: u8 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let n: i64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if parts.next().is_some() {
            return Err(bad());
        }
        FamilyId::new(name, m, n)
    }
}

fn g(i: i32, j: i32) -> VertexLabel {
    VertexLabel::sym("g", &[i, j])
}

fn rows_for(m: u8) -> i32 {
    m as i32 - 1
}

/// The diagonal grid core shared by every family: `rows x cols` vertices
/// `g(i,j)` in column-major order, with row, column, and odd-(i+j) diagonal
/// adjacencies.
fn grid_core(rows: i32, cols: i32) -> (Vec<VertexLabel>, Vec<(VertexLabel, VertexLabel)>) {
    let mut vertices = Vec::new();
    for j in 1..=cols {
        for i in 1..=rows {
            vertices.push(g(i, j));
        }
    }
    let mut edges = Vec::new();
    for j in 1..=cols {
        for i in 1..rows {
            edges.push((g(i, j), g(i + 1, j)));
        }
    }
    for j in 1..cols {
        for i in 1..=rows {
            edges.push((g(i, j), g(i, j + 1)));
        }
    }
    for j in 1..cols {
        for i in 1..rows {
            if (i + j) % 2 == 1 {
                edges.push((g(i, j), g(i + 1, j + 1)));
                edges.push((g(i, j + 1), g(i + 1, j)));
            }
        }
    }
    (vertices, edges)
}

fn sym(name: &str, i: i32) -> VertexLabel {
    VertexLabel::sym(name, &[i])
}

/// Builds the graph for a family member, with its published vertex names.
pub fn build(id: FamilyId) -> Result<Graph, FamilyError> {
    if !id.is_defined() {
        return Err(FamilyError::Undefined(id.name, id.m, id.n));
    }
    use FamilyName::*;

    // The two standalone gadgets with index -1.
    if id.n == -1 {
        let b = |i| sym("b", i);
        return Ok(match id.name {
            B => Graph::new(vec![b(1), b(2)], &[(b(1), b(2))]).unwrap(),
            BTilde => Graph::new(
                (1..=6).map(b).collect(),
                &b_gadget_edges(),
            )
            .unwrap(),
            _ => unreachable!("is_defined admits only B variants at n = -1"),
        });
    }

    let rows = rows_for(id.m);
    let cols = if id.name.is_tilde() {
        2 * id.n as i32 + 2
    } else {
        2 * id.n as i32 + 1
    };
    let (mut vertices, mut edges) = grid_core(rows, cols);

    let mut gadget = |vs: Vec<VertexLabel>, es: Vec<(VertexLabel, VertexLabel)>| {
        vertices.extend(vs);
        edges.extend(es);
    };

    match (id.m, id.name) {
        (_, Gamma | GammaTilde) => {}
        (3, LambdaTilde) => {}
        (5, Lambda | LambdaTilde) => {
            let l = |i| sym("l", i);
            gadget(
                (1..=4).map(&l).collect(),
                vec![
                    (l(1), l(2)),
                    (l(2), l(3)),
                    (l(3), l(4)),
                    (g(1, 1), l(1)),
                    (g(1, 1), l(2)),
                    (g(2, 1), l(1)),
                    (g(2, 1), l(2)),
                    (g(3, 1), l(3)),
                    (g(3, 1), l(4)),
                    (g(4, 1), l(3)),
                    (g(4, 1), l(4)),
                ],
            );
        }
        (5, A | ATilde) => {
            let a = |i| sym("a", i);
            gadget(
                vec![a(1), a(2)],
                vec![
                    (a(1), g(1, 1)),
                    (a(1), g(2, 1)),
                    (a(2), g(3, 1)),
                    (a(2), g(4, 1)),
                ],
            );
        }
        (5, B | BTilde) => {
            let b = |i| sym("b", i);
            let mut es = b_gadget_edges();
            es.extend([
                (b(3), g(1, 1)),
                (b(3), g(2, 1)),
                (b(4), g(1, 1)),
                (b(4), g(2, 1)),
                (b(5), g(3, 1)),
                (b(5), g(4, 1)),
                (b(6), g(3, 1)),
                (b(6), g(4, 1)),
            ]);
            gadget((1..=6).map(b).collect(), es);
        }
        (5, C | CTilde) => {
            let c = sym("c", 1);
            gadget(
                vec![c.clone()],
                vec![(c.clone(), g(3, 1)), (c, g(4, 1))],
            );
        }
        (5, D | DTilde) => {
            let d = |i| sym("d", i);
            gadget(
                vec![d(1), d(2)],
                vec![
                    (d(1), d(2)),
                    (d(1), g(1, 1)),
                    (d(1), g(2, 1)),
                    (d(2), g(3, 1)),
                    (d(2), g(4, 1)),
                ],
            );
        }
        (5, E | ETilde) => {
            let e = sym("e", 1);
            gadget(
                vec![e.clone()],
                vec![
                    (e.clone(), g(1, 1)),
                    (e.clone(), g(2, 1)),
                    (e.clone(), g(3, 1)),
                    (e, g(4, 1)),
                ],
            );
        }
        (5, F | FTilde) => {
            let f = |i| sym("f", i);
            gadget(
                vec![f(1), f(2), f(3)],
                vec![
                    (f(1), f(2)),
                    (f(2), f(3)),
                    (f(1), g(1, 1)),
                    (f(1), g(2, 1)),
                    (f(2), g(3, 1)),
                    (f(2), g(4, 1)),
                    (f(3), g(3, 1)),
                    (f(3), g(4, 1)),
                ],
            );
        }
        (4, Lambda) => {
            let gp = |i| sym("g'", i);
            gadget(
                vec![gp(1), gp(2), gp(3)],
                vec![
                    (gp(1), gp(2)),
                    (gp(1), g(1, 1)),
                    (gp(1), g(2, 1)),
                    (gp(2), gp(3)),
                    (gp(2), g(2, 1)),
                    (gp(2), g(1, 1)),
                    (gp(3), g(3, 1)),
                ],
            );
        }
        (4, A) => {
            let a = sym("a", 1);
            gadget(
                vec![a.clone()],
                vec![(a.clone(), g(1, 1)), (a, g(2, 1))],
            );
        }
        (4, B) => {
            let b = |i| sym("b", i);
            gadget(
                (1..=4).map(&b).collect(),
                vec![
                    (b(1), b(3)),
                    (b(1), b(4)),
                    (b(2), b(3)),
                    (b(3), b(4)),
                    (b(2), g(1, 1)),
                    (b(2), g(2, 1)),
                    (b(3), g(1, 1)),
                    (b(3), g(2, 1)),
                    (b(4), g(3, 1)),
                ],
            );
        }
        (4, C) => {
            let c = sym("c", 1);
            gadget(
                vec![c.clone()],
                vec![
                    (c.clone(), g(1, 1)),
                    (c.clone(), g(2, 1)),
                    (c, g(3, 1)),
                ],
            );
        }
        (4, D) => {
            let d = |i| sym("d", i);
            gadget(
                (1..=4).map(&d).collect(),
                vec![
                    (d(1), d(2)),
                    (d(1), d(3)),
                    (d(1), d(4)),
                    (d(2), d(3)),
                    (d(3), d(4)),
                    (d(2), g(1, 1)),
                    (d(2), g(2, 1)),
                    (d(3), g(1, 1)),
                    (d(3), g(2, 1)),
                    (d(4), g(3, 1)),
                ],
            );
        }
        (3, A) => {
            let a = sym("a", 1);
            gadget(
                vec![a.clone()],
                vec![(a.clone(), g(1, 1)), (a, g(2, 1))],
            );
        }
        (3, Lambda) => {
            let gp = |i| sym("g'", i);
            gadget(
                vec![gp(1), gp(2)],
                vec![
                    (gp(1), g(1, 1)),
                    (gp(2), g(2, 1)),
                    (gp(1), gp(2)),
                    (gp(1), g(2, 1)),
                    (gp(2), g(1, 1)),
                ],
            );
        }
        _ => unreachable!("is_defined filtered the rest"),
    }

    Ok(Graph::new(vertices, &edges).expect("family construction is well formed"))
}

/// Edges among the six b-vertices shared by the five-row B family and its
/// standalone tilde gadget.
fn b_gadget_edges() -> Vec<(VertexLabel, VertexLabel)> {
    let b = |i| sym("b", i);
    vec![
        (b(1), b(2)),
        (b(1), b(4)),
        (b(1), b(5)),
        (b(2), b(6)),
        (b(3), b(4)),
        (b(4), b(5)),
        (b(5), b(6)),
    ]
}

/// The two connected components of `L(P_n x P_m)`, each paired with the
/// family member it is isomorphic to. The isomorphism is checked, not
/// assumed; a failure signals a construction bug.
pub fn components_of_product(n: usize, m: u8) -> Result<Vec<(Graph, FamilyId)>, FamilyError> {
    if n < 2 {
        return Err(FamilyError::ProductTooSmall(n));
    }
    let product = Graph::path(n)
        .unwrap()
        .categorical_product(&Graph::path(m as usize).unwrap())
        .unwrap();
    let comps = product.line_graph().connected_components();
    if comps.len() != 2 {
        return Err(FamilyError::ComponentCount {
            n,
            m,
            found: comps.len(),
        });
    }

    let expected: Vec<FamilyId> = if n.is_multiple_of(2) {
        let k = (n as i64 - 2) / 2;
        let gamma = FamilyId::new(FamilyName::Gamma, m, k)?;
        vec![gamma, gamma]
    } else {
        let k = (n as i64 - 3) / 2;
        let partner = match m {
            5 => FamilyName::GammaTilde,
            4 => FamilyName::Lambda,
            3 => FamilyName::LambdaTilde,
            _ => return Err(FamilyError::Undefined(FamilyName::Gamma, m, 0)),
        };
        vec![
            FamilyId::new(FamilyName::Lambda, m, k)?,
            FamilyId::new(partner, m, k)?,
        ]
    };

    // Components come back ordered by least label; match them to the two
    // expected families in whichever assignment verifies.
    let models: Vec<Graph> = expected.iter().map(|&id| build(id).unwrap()).collect();
    let assignments: [(usize, usize); 2] = [(0, 1), (1, 0)];
    for (i, j) in assignments {
        if iso::is_isomorphic(&comps[0], &models[i]) && iso::is_isomorphic(&comps[1], &models[j]) {
            return Ok(vec![
                (comps[0].clone(), expected[i]),
                (comps[1].clone(), expected[j]),
            ]);
        }
    }
    let family = if iso::is_isomorphic(&comps[0], &models[0]) {
        expected[1]
    } else {
        expected[0]
    };
    Err(FamilyError::ComponentMismatch { n, m, family })
}
