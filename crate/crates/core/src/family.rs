//! Pattern families: explicit graph lists or named generators that depend on
//! the ambient order.

use std::fmt;
use std::str::FromStr;

use crate::count::{is_isomorphic, strip_isolated, Pattern};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFamily {
    Explicit(Vec<Graph>),
    /// `K_{1,leaves}`; `None` is the spanning star `K_{1,n-1}`.
    Star(Option<usize>),
    /// Every tree on the ambient order.
    Trees,
    Clique(usize),
    /// Perfect matching on the given (even) number of vertices.
    Matching(usize),
    Cycle(usize),
    Path(usize),
    HamCycle,
    PerfectMatching,
    /// `K_n` minus one edge on the ambient order.
    KMinus,
    CompleteBipartite(usize, usize),
    Union(Vec<GraphFamily>),
}

impl GraphFamily {
    pub fn single(g: Graph) -> Self {
        GraphFamily::Explicit(vec![g])
    }

    fn graphs(&self, n: usize) -> Result<Vec<Graph>> {
        let one = |g: Result<Graph>| g.map(|g| vec![g]);
        match self {
            GraphFamily::Explicit(list) => Ok(list.clone()),
            GraphFamily::Star(Some(leaves)) => one(Graph::star(*leaves)),
            GraphFamily::Star(None) => {
                need(n >= 2, "spanning star needs n >= 2")?;
                one(Graph::star(n - 1))
            }
            GraphFamily::Trees => all_trees(n),
            GraphFamily::Clique(r) => {
                need(*r >= 2, "clique needs at least 2 vertices")?;
                one(Graph::complete(*r))
            }
            GraphFamily::Matching(v) => {
                need(*v >= 2 && v % 2 == 0, "matching needs a positive even vertex count")?;
                one(Graph::matching(v / 2))
            }
            GraphFamily::Cycle(l) => one(Graph::cycle(*l)),
            GraphFamily::Path(l) => {
                need(*l >= 2, "path needs at least 2 vertices")?;
                one(Graph::path(*l))
            }
            GraphFamily::HamCycle => one(Graph::cycle(n)),
            GraphFamily::PerfectMatching => {
                need(n >= 2 && n.is_multiple_of(2), "perfect matching needs an even order")?;
                one(Graph::matching(n / 2))
            }
            GraphFamily::KMinus => {
                need(n >= 3, "K_n minus an edge needs n >= 3")?;
                one(Graph::complete_minus_edge(n))
            }
            GraphFamily::CompleteBipartite(a, b) => {
                need(*a >= 1 && *b >= 1, "complete bipartite parts must be positive")?;
                one(Graph::complete_bipartite(*a, *b))
            }
            GraphFamily::Union(parts) => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(p.graphs(n)?);
                }
                Ok(out)
            }
        }
    }

    /// Members for ambient order `n`, stripped of isolated vertices and
    /// checked pairwise non-isomorphic.
    pub fn resolve(&self, n: usize) -> Result<ResolvedFamily> {
        let mut members: Vec<Pattern> = Vec::new();
        for g in self.graphs(n)? {
            let g = strip_isolated(&g);
            if g.edge_count() == 0 {
                return Err(Error::Family("members need at least one edge".into()));
            }
            if members.iter().any(|m| is_isomorphic(m.graph(), &g)) {
                return Err(Error::Family(format!("duplicate member up to isomorphism: {g}")));
            }
            members.push(Pattern::new(&g));
        }
        if members.is_empty() {
            return Err(Error::Family("empty family".into()));
        }
        Ok(ResolvedFamily { members })
    }
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Family(msg.into()))
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedFamily {
    members: Vec<Pattern>,
}

impl ResolvedFamily {
    pub fn members(&self) -> &[Pattern] {
        &self.members
    }

    /// Total copies of all members in `host`.
    pub fn count(&self, host: &Graph) -> u64 {
        self.members.iter().map(|m| m.count_in(host)).sum()
    }

    /// `min(total, cap)`.
    pub fn count_capped(&self, host: &Graph, cap: u64) -> u64 {
        let mut total = 0;
        for m in &self.members {
            total += m.count_in_capped(host, cap - total);
            if total >= cap {
                return cap;
            }
        }
        total
    }

    pub fn min_order(&self) -> usize {
        self.members.iter().map(Pattern::order).min().unwrap()
    }

    pub fn max_order(&self) -> usize {
        self.members.iter().map(Pattern::order).max().unwrap()
    }

    pub fn min_edges(&self) -> usize {
        self.members.iter().map(Pattern::edge_count).min().unwrap()
    }

    pub fn uniform_edges(&self) -> Option<usize> {
        let e = self.members[0].edge_count();
        self.members.iter().all(|m| m.edge_count() == e).then_some(e)
    }

    pub fn all_connected(&self) -> bool {
        self.members.iter().all(|m| m.graph().is_connected())
    }
}

/// Non-isomorphic trees on `n` vertices, grown leaf by leaf.
pub fn all_trees(n: usize) -> Result<Vec<Graph>> {
    need(n >= 2, "trees need at least 2 vertices")?;
    let mut level = vec![Graph::complete(2)?];
    for size in 3..=n {
        let mut next: Vec<Graph> = Vec::new();
        for t in &level {
            for v in 0..size - 1 {
                let mut g = t.disjoint_union(&Graph::empty(1)?)?;
                g.add_edge(v, size - 1)?;
                if !next.iter().any(|h| is_isomorphic(h, &g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Explicit(list) => {
                let s: Vec<String> = list.iter().map(graph6::encode).collect();
                write!(f, "g6:{}", s.join(","))
            }
            GraphFamily::Star(None) => f.write_str("star"),
            GraphFamily::Star(Some(l)) => write!(f, "star:{l}"),
            GraphFamily::Trees => f.write_str("trees"),
            GraphFamily::Clique(r) => write!(f, "clique:{r}"),
            GraphFamily::Matching(v) => write!(f, "matching:{v}"),
            GraphFamily::Cycle(l) => write!(f, "cycle:{l}"),
            GraphFamily::Path(l) => write!(f, "path:{l}"),
            GraphFamily::HamCycle => f.write_str("hamcycle"),
            GraphFamily::PerfectMatching => f.write_str("perfmatching"),
            GraphFamily::KMinus => f.write_str("kminus"),
            GraphFamily::CompleteBipartite(a, b) => write!(f, "bipartite:{a},{b}"),
            GraphFamily::Union(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                f.write_str(&s.join("+"))
            }
        }
    }
}

fn parse_num(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Family(format!("bad {what} '{s}'")))
}

impl FromStr for GraphFamily {
    type Err = Error;

    /// Grammar: `term(+term)*` with terms `star[:R]`, `trees`, `clique:R`,
    /// `matching:L`, `cycle:L`, `path:L`, `hamcycle`, `perfmatching`,
    /// `kminus`, `bipartite:A,B`, `g6:S1,S2,...` or `@file` (one graph6 per line).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('@') {
            return parse_term(s);
        }
        let terms: Vec<&str> = s.split('+').collect();
        if terms.len() == 1 {
            return parse_term(terms[0]);
        }
        Ok(GraphFamily::Union(
            terms.into_iter().map(parse_term).collect::<Result<_>>()?,
        ))
    }
}

fn parse_term(term: &str) -> Result<GraphFamily> {
    let term = term.trim();
    if let Some(path) = term.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Family(format!("cannot read {path}: {e}")))?;
        let graphs = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(graph6::decode)
            .collect::<Result<Vec<_>>>()?;
        return Ok(GraphFamily::Explicit(graphs));
    }
    let (name, arg) = match term.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (term, None),
    };
    let arg_num = |what: &str| -> Result<usize> {
        parse_num(
            arg.ok_or_else(|| Error::Family(format!("'{name}' needs :{what}")))?,
            what,
        )
    };
    let no_arg = |fam: GraphFamily| -> Result<GraphFamily> {
        match arg {
            None => Ok(fam),
            Some(_) => Err(Error::Family(format!("'{name}' takes no argument"))),
        }
    };
    match name {
        "star" => match arg {
            None => Ok(GraphFamily::Star(None)),
            Some(a) => Ok(GraphFamily::Star(Some(parse_num(a, "leaf count")?))),
        },
        "trees" => no_arg(GraphFamily::Trees),
        "clique" => Ok(GraphFamily::Clique(arg_num("R")?)),
        "matching" => Ok(GraphFamily::Matching(arg_num("L")?)),
        "cycle" => Ok(GraphFamily::Cycle(arg_num("L")?)),
        "path" => Ok(GraphFamily::Path(arg_num("L")?)),
        "hamcycle" => no_arg(GraphFamily::HamCycle),
        "perfmatching" => no_arg(GraphFamily::PerfectMatching),
        "kminus" => no_arg(GraphFamily::KMinus),
        "bipartite" => {
            let a = arg.ok_or_else(|| Error::Family("'bipartite' needs :A,B".into()))?;
            let (x, y) = a
                .split_once(',')
                .ok_or_else(|| Error::Family("'bipartite' needs :A,B".into()))?;
            Ok(GraphFamily::CompleteBipartite(parse_num(x, "A")?, parse_num(y, "B")?))
        }
        "g6" => {
            let a = arg.ok_or_else(|| Error::Family("'g6' needs :graph6[,graph6...]".into()))?;
            Ok(GraphFamily::Explicit(
                a.split(',').map(graph6::decode).collect::<Result<_>>()?,
            ))
        }
        other => Err(Error::Family(format!("unknown family '{other}'"))),
    }
}
