//! Newton processes.
//!
//! A process lists, for every final vertex of the algorithm, the sequence of
//! Newton maps reaching it and a terminal: a dicritical degree (the last map
//! then carries the generic marker) or a branch `(y + h(x))^ν` given by a
//! certificate polynomial whose only local branch at the origin is that one.
//! The `x`- and `y`-content of the ideal are kept as separate fields.
//!
//! A branch stops at the first node of depth zero. When processes of several
//! ideals are merged, a branch that stopped at a node where the other factors
//! still carry data is pushed one step further along its own Newton map
//! `σ_(1,r,μ)`, so that the merged process is the process of the product.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use algebra_core::{gcd, parse_poly, BPoly};
use serde::{Deserialize, Serialize};

use crate::error::{NewtonError, Result};
use crate::maps::{apply_map_poly, make_map, Mu, NewtonMap};
use crate::tree::{
    build_tree, ChildSpec, ColumnSpec, FaceSpec, NewtonTree, RootSpec, TreeLayout, TreeSpec,
};

/// Terminal of a process entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Terminal {
    Dicritical { d: u64 },
    Branch { certificate: BPoly, nu: u64 },
}

impl Terminal {
    /// A branch along the `x`-axis, `y^ν`.
    pub fn y_branch(nu: u64) -> Terminal {
        Terminal::Branch {
            certificate: BPoly::y(),
            nu,
        }
    }

    /// Whether this is a branch whose local germ is `y = 0`.
    pub fn is_y_branch(&self) -> bool {
        matches!(self, Terminal::Branch { certificate, .. } if is_y_certificate(certificate))
    }

    fn rank(&self) -> u8 {
        match self {
            Terminal::Dicritical { .. } => 0,
            t if t.is_y_branch() => 1,
            _ => 2,
        }
    }

    /// Exponent: `d` or `ν`.
    pub fn exponent(&self) -> u64 {
        match self {
            Terminal::Dicritical { d } => *d,
            Terminal::Branch { nu, .. } => *nu,
        }
    }
}

/// Whether the certificate's local branch at the origin is `y = 0`.
pub fn is_y_certificate(c: &BPoly) -> bool {
    c.at_y_zero().is_zero()
}

/// One entry `(Σ; Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProcessEntry {
    pub maps: Vec<NewtonMap>,
    pub terminal: Terminal,
}

impl ProcessEntry {
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.maps
            .cmp(&other.maps)
            .then_with(|| self.terminal.rank().cmp(&other.terminal.rank()))
            .then_with(|| self.terminal.exponent().cmp(&other.terminal.exponent()))
            .then_with(|| match (&self.terminal, &other.terminal) {
                (
                    Terminal::Branch { certificate: a, .. },
                    Terminal::Branch { certificate: b, .. },
                ) => a.to_string().cmp(&b.to_string()),
                _ => Ordering::Equal,
            })
    }
}

impl fmt::Display for ProcessEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if self.maps.is_empty() {
            write!(f, "∅")?;
        }
        for (k, m) in self.maps.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        match &self.terminal {
            Terminal::Dicritical { d } => write!(f, ";{d})"),
            Terminal::Branch { certificate, nu } => {
                if is_y_certificate(certificate) {
                    write!(f, ";y")?;
                } else {
                    write!(f, ";({certificate})")?;
                }
                if *nu > 1 {
                    write!(f, "^{nu}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A Newton process with the monomial content of the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NewtonProcess {
    pub x_content: u64,
    pub y_content: u64,
    pub entries: Vec<ProcessEntry>,
}

impl fmt::Display for NewtonProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} y^{} {{", self.x_content, self.y_content)?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    p: u64,
    q: u64,
    p_prime: u64,
    q_prime: u64,
    mu: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum TerminalJson {
    Dicritical { d: u64 },
    Branch { nu: u64, certificate: String },
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    maps: Vec<MapJson>,
    terminal: TerminalJson,
}

#[derive(Serialize, Deserialize)]
struct ProcessJson {
    x_content: u64,
    y_content: u64,
    entries: Vec<EntryJson>,
}

/// JSON form of a map sequence.
pub fn maps_json(maps: &[NewtonMap]) -> serde_json::Value {
    serde_json::to_value(maps.iter().map(map_to_json).collect::<Vec<_>>()).expect("serializable")
}

fn map_to_json(m: &NewtonMap) -> MapJson {
    MapJson {
        p: m.p,
        q: m.q,
        p_prime: m.p_prime,
        q_prime: m.q_prime,
        mu: m.mu.to_string(),
    }
}

impl NewtonProcess {
    /// Sorts the entries into canonical order.
    pub fn canonicalize(&mut self) {
        self.entries.sort_by(ProcessEntry::canonical_cmp);
    }

    /// Dicritical entries.
    pub fn dicriticals(&self) -> impl Iterator<Item = &ProcessEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.terminal, Terminal::Dicritical { .. }))
    }

    /// Longest map sequence.
    pub fn depth(&self) -> usize {
        self.entries.iter().map(|e| e.maps.len()).max().unwrap_or(0)
    }

    /// Deterministic JSON serialization.
    pub fn to_json(&self) -> String {
        let out = ProcessJson {
            x_content: self.x_content,
            y_content: self.y_content,
            entries: self
                .entries
                .iter()
                .map(|e| EntryJson {
                    maps: e.maps.iter().map(map_to_json).collect(),
                    terminal: match &e.terminal {
                        Terminal::Dicritical { d } => TerminalJson::Dicritical { d: *d },
                        Terminal::Branch { certificate, nu } => TerminalJson::Branch {
                            nu: *nu,
                            certificate: certificate.to_string(),
                        },
                    },
                })
                .collect(),
        };
        serde_json::to_string(&out).expect("serializable")
    }

    /// Parses the output of [`NewtonProcess::to_json`].
    pub fn from_json(text: &str) -> Result<NewtonProcess> {
        let raw: ProcessJson =
            serde_json::from_str(text).map_err(|e| NewtonError::Malformed(e.to_string()))?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for e in raw.entries {
            let mut maps = Vec::with_capacity(e.maps.len());
            for m in e.maps {
                let mu = Mu::parse(&m.mu)
                    .ok_or_else(|| NewtonError::Malformed(format!("bad root {}", m.mu)))?;
                let map = make_map(m.p, m.q, mu)?;
                if (map.p_prime, map.q_prime) != (m.p_prime, m.q_prime) {
                    return Err(NewtonError::Malformed(format!(
                        "non-canonical exponents for {map}"
                    )));
                }
                maps.push(map);
            }
            let terminal = match e.terminal {
                TerminalJson::Dicritical { d } => Terminal::Dicritical { d },
                TerminalJson::Branch { nu, certificate } => Terminal::Branch {
                    certificate: parse_poly(&certificate)?,
                    nu,
                },
            };
            entries.push(ProcessEntry { maps, terminal });
        }
        Ok(NewtonProcess {
            x_content: raw.x_content,
            y_content: raw.y_content,
            entries,
        })
    }
}

/// Whether two branch certificates describe the same local branch: their gcd
/// vanishes at the origin.
pub fn branches_equal(c1: &BPoly, c2: &BPoly) -> bool {
    gcd(c1, c2).vanishes_at_origin()
}

fn terminals_equivalent(a: &Terminal, b: &Terminal) -> bool {
    match (a, b) {
        (Terminal::Dicritical { d: x }, Terminal::Dicritical { d: y }) => x == y,
        (
            Terminal::Branch {
                certificate: c1,
                nu: n1,
            },
            Terminal::Branch {
                certificate: c2,
                nu: n2,
            },
        ) => n1 == n2 && branches_equal(c1, c2),
        _ => false,
    }
}

/// Equality of processes with branch certificates compared by
/// [`branches_equal`].
pub fn processes_equivalent(a: &NewtonProcess, b: &NewtonProcess) -> bool {
    if (a.x_content, a.y_content, a.entries.len()) != (b.x_content, b.y_content, b.entries.len()) {
        return false;
    }
    let mut ea = a.entries.clone();
    let mut eb = b.entries.clone();
    let key = |x: &ProcessEntry, y: &ProcessEntry| {
        x.maps
            .cmp(&y.maps)
            .then_with(|| x.terminal.rank().cmp(&y.terminal.rank()))
            .then_with(|| x.terminal.exponent().cmp(&y.terminal.exponent()))
    };
    ea.sort_by(key);
    eb.sort_by(key);
    ea.iter()
        .zip(&eb)
        .all(|(x, y)| x.maps == y.maps && terminals_equivalent(&x.terminal, &y.terminal))
}

/// Relative entries of one source at one node of the merge recursion.
#[derive(Clone, Default)]
struct Src {
    y: u64,
    entries: Vec<(Vec<NewtonMap>, Terminal)>,
}

/// Newton map `σ_(1,r,μ)` separating a smooth branch `c = 0` with nonzero
/// `y`-derivative, where `c(x, 0)` has order `r` and `μ` is minus the ratio
/// of its `x^r` coefficient to the `y` coefficient of `c`.
fn branch_map(c: &BPoly) -> NewtonMap {
    let at_axis = c.at_y_zero();
    let r = at_axis.order().expect("branch is not the x-axis");
    let lin = c.coeff(0, 1);
    assert!(
        !lin.is_zero(),
        "branch certificate must have nonzero y-derivative"
    );
    let mu = -(&at_axis.coeff(r) / &lin);
    make_map(1, r as u64, Mu::Value(mu)).expect("valid branch map")
}

struct Merger {
    k: usize,
    out: Vec<Vec<ProcessEntry>>,
    contents_y: Vec<u64>,
}

impl Merger {
    fn emit(&mut self, i: usize, maps: &[NewtonMap], t: Terminal) {
        self.out[i].push(ProcessEntry {
            maps: maps.to_vec(),
            terminal: t,
        });
    }

    fn emit_y(&mut self, prefix: &[NewtonMap], ys: &[u64]) {
        let total: u64 = ys.iter().sum();
        if total == 0 {
            return;
        }
        for (i, &y) in ys.iter().enumerate() {
            if y > 0 {
                if prefix.is_empty() {
                    self.contents_y[i] += y;
                } else {
                    self.emit(i, prefix, Terminal::y_branch(y));
                }
            }
        }
        if prefix.is_empty() {
            self.contents_y[self.k] += total;
        } else {
            self.emit(self.k, prefix, Terminal::y_branch(total));
        }
    }

    fn node(&mut self, prefix: &[NewtonMap], mut srcs: Vec<Src>) {
        let active: Vec<usize> = (0..srcs.len())
            .filter(|&i| srcs[i].y > 0 || !srcs[i].entries.is_empty())
            .collect();
        if active.is_empty() {
            return;
        }
        let ys: Vec<u64> = srcs.iter().map(|s| s.y).collect();
        if active.iter().all(|&i| srcs[i].entries.is_empty()) {
            self.emit_y(prefix, &ys);
            return;
        }
        let single_branch = |s: &Src| -> Option<BPoly> {
            match s.entries.as_slice() {
                [(maps, Terminal::Branch { certificate, .. })]
                    if s.y == 0 && maps.is_empty() && !is_y_certificate(certificate) =>
                {
                    Some(certificate.clone())
                }
                _ => None,
            }
        };
        let certs: Option<Vec<BPoly>> = active.iter().map(|&i| single_branch(&srcs[i])).collect();
        if let Some(certs) = certs {
            if certs.iter().all(|c| branches_equal(c, &certs[0])) {
                let mut total = 0;
                for &i in &active {
                    let t = srcs[i].entries[0].1.clone();
                    total += t.exponent();
                    self.emit(i, prefix, t);
                }
                self.emit(
                    self.k,
                    prefix,
                    Terminal::Branch {
                        certificate: certs[0].clone(),
                        nu: total,
                    },
                );
                return;
            }
        }
        // Not depth zero: push depth-zero branches one map further.
        for s in srcs.iter_mut() {
            let mut kept = Vec::with_capacity(s.entries.len());
            for (maps, t) in s.entries.drain(..) {
                match (&t, maps.is_empty()) {
                    (Terminal::Branch { certificate, nu }, true) => {
                        let map = branch_map(certificate);
                        let (_, c1) = apply_map_poly(certificate, &map);
                        let t1 = if is_y_certificate(&c1) {
                            Terminal::y_branch(*nu)
                        } else {
                            Terminal::Branch {
                                certificate: c1,
                                nu: *nu,
                            }
                        };
                        kept.push((vec![map], t1));
                    }
                    (Terminal::Dicritical { .. }, true) => {
                        unreachable!("dicritical entries end with a generic map")
                    }
                    _ => kept.push((maps, t)),
                }
            }
            s.entries = kept;
        }
        self.emit_y(prefix, &ys);
        let mut dicritical: BTreeMap<NewtonMap, Vec<u64>> = BTreeMap::new();
        let mut children: BTreeMap<NewtonMap, Vec<Src>> = BTreeMap::new();
        let n = srcs.len();
        for (i, s) in srcs.into_iter().enumerate() {
            for (maps, t) in s.entries {
                let first = maps[0].clone();
                if first.is_generic() {
                    let slot = dicritical.entry(first).or_insert_with(|| vec![0; n]);
                    slot[i] += t.exponent();
                } else {
                    let slot = children
                        .entry(first)
                        .or_insert_with(|| vec![Src::default(); n]);
                    let rest = maps[1..].to_vec();
                    if rest.is_empty() && t.is_y_branch() {
                        slot[i].y += t.exponent();
                    } else {
                        slot[i].entries.push((rest, t));
                    }
                }
            }
        }
        for (map, ds) in dicritical {
            let mut maps = prefix.to_vec();
            maps.push(map);
            for (i, &d) in ds.iter().enumerate() {
                if d > 0 {
                    self.emit(i, &maps, Terminal::Dicritical { d });
                }
            }
            self.emit(self.k, &maps, Terminal::Dicritical { d: ds.iter().sum() });
        }
        for (map, child) in children {
            let mut maps = prefix.to_vec();
            maps.push(map);
            self.node(&maps, child);
        }
    }
}

/// Merges processes by the product rule. Returns the process of the product
/// and, for each input, the same process re-expressed on the merged tree.
pub fn merge_aligned(ps: &[&NewtonProcess]) -> (NewtonProcess, Vec<NewtonProcess>) {
    let k = ps.len();
    let mut m = Merger {
        k,
        out: vec![Vec::new(); k + 1],
        contents_y: vec![0; k + 1],
    };
    let srcs: Vec<Src> = ps
        .iter()
        .map(|p| Src {
            y: p.y_content,
            entries: p
                .entries
                .iter()
                .map(|e| (e.maps.clone(), e.terminal.clone()))
                .collect(),
        })
        .collect();
    m.node(&[], srcs);
    let mut outs: Vec<NewtonProcess> = m
        .out
        .into_iter()
        .enumerate()
        .map(|(i, entries)| NewtonProcess {
            x_content: if i < k {
                ps[i].x_content
            } else {
                ps.iter().map(|p| p.x_content).sum()
            },
            y_content: m.contents_y[i],
            entries,
        })
        .collect();
    for p in outs.iter_mut() {
        p.canonicalize();
    }
    let merged = outs.pop().expect("merged output");
    (merged, outs)
}

/// Process of the product of two ideals from their processes.
pub fn merge_processes(p1: &NewtonProcess, p2: &NewtonProcess) -> NewtonProcess {
    merge_aligned(&[p1, p2]).0
}

#[derive(Default)]
struct PNode {
    y: u64,
    leaf: Option<u64>,
    dicritical: BTreeMap<NewtonMap, u64>,
    children: BTreeMap<NewtonMap, PNode>,
}

impl PNode {
    fn is_column(&self) -> bool {
        !self.children.is_empty() || !self.dicritical.is_empty()
    }
}

fn insert(node: &mut PNode, maps: &[NewtonMap], t: &Terminal) -> Result<()> {
    match maps {
        [] => match t {
            Terminal::Branch { nu, certificate } if is_y_certificate(certificate) => {
                node.y += nu;
                Ok(())
            }
            Terminal::Branch { nu, .. } => {
                if node.leaf.is_some() {
                    return Err(NewtonError::InconsistentProcess(
                        "two branches end at the same node".into(),
                    ));
                }
                node.leaf = Some(*nu);
                Ok(())
            }
            Terminal::Dicritical { .. } => Err(NewtonError::InconsistentProcess(
                "dicritical entry without a generic map".into(),
            )),
        },
        [last] if last.is_generic() => match t {
            Terminal::Dicritical { d } => {
                *node.dicritical.entry(last.clone()).or_insert(0) += d;
                Ok(())
            }
            Terminal::Branch { .. } => Err(NewtonError::InconsistentProcess(
                "branch entry ends with a generic map".into(),
            )),
        },
        [first, rest @ ..] => {
            if first.is_generic() {
                return Err(NewtonError::InconsistentProcess(
                    "generic map before the end of a sequence".into(),
                ));
            }
            insert(node.children.entry(first.clone()).or_default(), rest, t)
        }
    }
}

fn column_spec(path: Vec<NewtonMap>, node: &PNode) -> Result<ColumnSpec> {
    if node.leaf.is_some() {
        return Err(NewtonError::InconsistentProcess(format!(
            "branch ends at a node that continues, after {} maps",
            path.len()
        )));
    }
    let mut faces: BTreeMap<(u64, u64), FaceSpec> = BTreeMap::new();
    let mut order: Vec<NewtonMap> = node
        .dicritical
        .keys()
        .chain(node.children.keys())
        .map(NewtonMap::generic)
        .collect();
    order.sort();
    order.dedup();
    for m in &order {
        faces.insert(
            (m.p, m.q),
            FaceSpec {
                p: m.p,
                m: m.q,
                d: node.dicritical.get(m).copied().unwrap_or(0),
                n: None,
                children: Vec::new(),
            },
        );
    }
    for (map, child) in &node.children {
        let mut child_path = path.clone();
        child_path.push(map.clone());
        let spec = if child.is_column() {
            ChildSpec::Column(column_spec(child_path, child)?)
        } else {
            let mult = child.y + child.leaf.unwrap_or(0);
            if child.y > 0 && child.leaf.is_some() {
                return Err(NewtonError::InconsistentProcess(
                    "a y-branch and another branch end at the same node".into(),
                ));
            }
            ChildSpec::Leaf {
                map: map.clone(),
                mult,
            }
        };
        faces
            .get_mut(&(map.p, map.q))
            .expect("face registered")
            .children
            .push(spec);
    }
    Ok(ColumnSpec {
        path,
        y: node.y,
        faces: order
            .iter()
            .map(|m| faces.remove(&(m.p, m.q)).expect("face registered"))
            .collect(),
    })
}

/// Column description of the tree determined by a process.
pub fn tree_spec(p: &NewtonProcess) -> Result<TreeSpec> {
    let mut root = PNode {
        y: p.y_content,
        ..PNode::default()
    };
    for e in &p.entries {
        insert(&mut root, &e.maps, &e.terminal)?;
    }
    let root_spec = if root.is_column() {
        RootSpec::Column(column_spec(Vec::new(), &root)?)
    } else {
        if root.y > 0 && root.leaf.is_some() {
            return Err(NewtonError::InconsistentProcess(
                "y-content and a branch at a depth-zero root".into(),
            ));
        }
        RootSpec::Bare {
            bottom: root.y + root.leaf.unwrap_or(0),
        }
    };
    Ok(TreeSpec {
        x_content: p.x_content,
        root: root_spec,
    })
}

/// Rebuilds the Newton tree from a process; vertex values come from the
/// decoration identity.
pub fn reconstruct_tree(p: &NewtonProcess) -> Result<NewtonTree> {
    Ok(reconstruct_with_layout(p)?.0)
}

/// [`reconstruct_tree`] together with the provenance of vertices and arrows.
pub fn reconstruct_with_layout(p: &NewtonProcess) -> Result<(NewtonTree, TreeLayout)> {
    Ok(build_tree(&tree_spec(p)?))
}

/// Factor of a Zariski factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorDescriptor {
    /// The line `x = 0` or `y = 0`.
    Axis(char),
    /// An irreducible curve through the origin, with the maps reaching it.
    Curve {
        maps: Vec<NewtonMap>,
        certificate: BPoly,
    },
    /// A simple integrally closed ideal with process `{(Σ; 1)}`; monomial
    /// generators are listed when `Σ` is a single generic map.
    Simple {
        maps: Vec<NewtonMap>,
        monomial: Option<Vec<(u64, u64)>>,
    },
}

/// Generators of the simple monomial ideal with single face
/// `pα + qβ = pq`, by decreasing power of `x`.
pub fn simple_monomial_generators(p: u64, q: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    let mut last = u64::MAX;
    for a in 0..=q {
        let b = (p * q - p * a).div_ceil(q);
        if b < last {
            gens.push((a, b));
            last = b;
        }
    }
    gens.reverse();
    gens
}

fn monomial_text(a: u64, b: u64) -> String {
    let part = |v: &str, e: u64| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    let parts: Vec<String> = [part("x", a), part("y", b)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn write_maps(f: &mut fmt::Formatter<'_>, maps: &[NewtonMap]) -> fmt::Result {
    for (k, m) in maps.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{m}")?;
    }
    Ok(())
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorDescriptor::Axis(v) => write!(f, "({v})"),
            FactorDescriptor::Curve { maps, certificate } => {
                write!(f, "C{{(")?;
                write_maps(f, maps)?;
                write!(f, ";{certificate})}}")
            }
            FactorDescriptor::Simple {
                monomial: Some(gens),
                ..
            } => {
                let g: Vec<String> = gens.iter().map(|&(a, b)| monomial_text(a, b)).collect();
                write!(f, "({})", g.join(","))
            }
            FactorDescriptor::Simple { maps, .. } => {
                write!(f, "J{{(")?;
                write_maps(f, maps)?;
                write!(f, ";1)}}")
            }
        }
    }
}

/// The factorization `closure(I) = x^a y^b ∏ (curves)^ν ∏ (simple ideals)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiFactorization {
    pub factors: Vec<(FactorDescriptor, u64)>,
}

impl fmt::Display for ZariskiFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "(1)");
        }
        let axes: Vec<(char, u64)> = self
            .factors
            .iter()
            .filter_map(|(d, e)| match d {
                FactorDescriptor::Axis(c) => Some((*c, *e)),
                _ => None,
            })
            .collect();
        if !axes.is_empty() {
            let a = axes.iter().find(|x| x.0 == 'x').map_or(0, |x| x.1);
            let b = axes.iter().find(|x| x.0 == 'y').map_or(0, |x| x.1);
            write!(f, "({})", monomial_text(a, b))?;
        }
        for (d, e) in &self.factors {
            if matches!(d, FactorDescriptor::Axis(_)) {
                continue;
            }
            write!(f, "{d}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// One factor per entry: a dicritical entry gives a simple integrally closed
/// ideal, a branch entry an irreducible curve, and the contents give powers
/// of the axes.
pub fn zariski_factorization(p: &NewtonProcess) -> ZariskiFactorization {
    let mut factors = Vec::new();
    if p.x_content > 0 {
        factors.push((FactorDescriptor::Axis('x'), p.x_content));
    }
    if p.y_content > 0 {
        factors.push((FactorDescriptor::Axis('y'), p.y_content));
    }
    for e in &p.entries {
        match &e.terminal {
            Terminal::Dicritical { d } => {
                let monomial = match e.maps.as_slice() {
                    [only] => Some(simple_monomial_generators(only.p, only.q)),
                    _ => None,
                };
                factors.push((
                    FactorDescriptor::Simple {
                        maps: e.maps.clone(),
                        monomial,
                    },
                    *d,
                ));
            }
            Terminal::Branch { certificate, nu } => factors.push((
                FactorDescriptor::Curve {
                    maps: e.maps.clone(),
                    certificate: certificate.clone(),
                },
                *nu,
            )),
        }
    }
    ZariskiFactorization { factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(p: u64, q: u64, mu: Option<i64>) -> NewtonMap {
        make_map(p, q, mu.map_or(Mu::Generic, |v| Mu::Value(v.into()))).unwrap()
    }

    fn dic(maps: Vec<NewtonMap>, d: u64) -> ProcessEntry {
        ProcessEntry {
            maps,
            terminal: Terminal::Dicritical { d },
        }
    }

    #[test]
    fn merge_rules() {
        let a = NewtonProcess {
            entries: vec![dic(vec![map(1, 1, None)], 2)],
            ..Default::default()
        };
        let b = NewtonProcess {
            entries: vec![dic(vec![map(1, 1, None)], 3)],
            ..Default::default()
        };
        assert_eq!(
            merge_processes(&a, &b).entries,
            vec![dic(vec![map(1, 1, None)], 5)]
        );
        let c = NewtonProcess {
            entries: vec![dic(vec![map(1, 3, None)], 1)],
            ..Default::default()
        };
        let m = merge_processes(&a, &c);
        assert_eq!(m.entries.len(), 2);
        assert_eq!(m.entries[0].maps[0].q, 1);
        assert_eq!(merge_processes(&a, &NewtonProcess::default()), a);
    }

    #[test]
    fn branch_equality() {
        let p = |s: &str| parse_poly(s).unwrap();
        assert!(branches_equal(&p("y-x"), &p("y-x")));
        assert!(!branches_equal(&p("y-x"), &p("y+x")));
        assert!(branches_equal(&p("(y-x)*(1+y)"), &p("(y-x)*(2+x)")));
    }

    #[test]
    fn branch_pushed_when_meeting_ideal() {
        // (y - x) times (x, y): the branch must move to the child of the
        // (1,1) face where it becomes a y-branch.
        let curve = NewtonProcess {
            entries: vec![ProcessEntry {
                maps: Vec::new(),
                terminal: Terminal::Branch {
                    certificate: parse_poly("y-x").unwrap(),
                    nu: 1,
                },
            }],
            ..Default::default()
        };
        let ideal = NewtonProcess {
            entries: vec![dic(vec![map(1, 1, None)], 1)],
            ..Default::default()
        };
        let m = merge_processes(&curve, &ideal);
        assert_eq!(m.to_string(), "x^0 y^0 {(σ(1,1,GENERIC);1),(σ(1,1,1);y)}");
    }

    #[test]
    fn json_round_trip() {
        let p = NewtonProcess {
            x_content: 2,
            y_content: 1,
            entries: vec![
                dic(vec![map(1, 1, Some(-1)), map(1, 3, None)], 1),
                ProcessEntry {
                    maps: vec![map(2, 1, Some(3))],
                    terminal: Terminal::y_branch(1),
                },
            ],
        };
        let back = NewtonProcess::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        assert!(p.to_json().contains("\"mu\":\"GENERIC\""));
    }

    #[test]
    fn monomial_factors() {
        let p = NewtonProcess {
            entries: vec![dic(vec![map(1, 1, None)], 3), dic(vec![map(1, 3, None)], 1)],
            ..Default::default()
        };
        assert_eq!(zariski_factorization(&p).to_string(), "(x,y)^3(x^3,y)");
        let curve = NewtonProcess {
            y_content: 2,
            entries: vec![ProcessEntry {
                maps: vec![map(2, 3, Some(1))],
                terminal: Terminal::y_branch(1),
            }],
            ..Default::default()
        };
        assert_eq!(
            zariski_factorization(&curve).to_string(),
            "(y^2)C{(σ(2,3,1);y)}"
        );
        assert_eq!(simple_monomial_generators(2, 1), vec![(1, 0), (0, 2)]);
        assert_eq!(
            simple_monomial_generators(5, 2),
            vec![(2, 0), (1, 3), (0, 5)]
        );
    }
}
