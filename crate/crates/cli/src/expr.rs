//! Graph expressions: `petersen`, `johnson:8,2`, `union:cycle:5+complete:3`,
//! `blowup:g6:Bw,3`, and so on.

use std::fmt;

use ckbound::bounds::blowup_spectrum;
use ckbound::exact::Rational;
use ckbound::families::{
    complete_descriptor, cycle_descriptor, drg_spectrum, gosset_descriptor, icosahedron_descriptor, johnson_descriptor,
    paley_descriptor, petersen_descriptor, srg_spectrum, taylor_co3_descriptor, IntersectionArray, SpectralDescriptor,
    SrgParams,
};
use ckbound::graph::{closed_blowup_graph, complement, disjoint_union, g6_decode, g6_encode, Graph};
use ckbound::spectral::EigenValue;
use ckbound::{Error, Spectrum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphExpr {
    Complete(usize),
    Cycle(usize),
    Johnson(usize, usize),
    Paley(usize),
    Petersen,
    Icosahedron,
    Gosset,
    TaylorCo3,
    Srg(SrgParams),
    Drg { b: Vec<u64>, c: Vec<u64> },
    G6(String),
    Union(Box<GraphExpr>, Box<GraphExpr>),
    Complement(Box<GraphExpr>),
    Blowup(Box<GraphExpr>, usize),
}

/// Parse failure with the byte offset at which it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "invalid graph expression at position {}: {}",
            self.position, self.message
        )?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.position))
    }
}

impl std::error::Error for ParseError {}

const ATOMS: &[&str] = &[
    "complete",
    "cycle",
    "johnson",
    "paley",
    "petersen",
    "icosahedron",
    "gosset",
    "taylor-co3",
    "srg",
    "drg",
    "g6",
    "union",
    "complement",
    "blowup",
];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            input: self.src.to_string(),
            position,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        if self.rest().starts_with(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{ch}'"))
        }
    }

    fn word(&mut self) -> &'a str {
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
            .unwrap_or(self.rest().len());
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<T, ParseError> {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.err(start, "expected a non-negative integer");
        }
        self.pos += len;
        match self.src[start..self.pos].parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err(start, "integer out of range"),
        }
    }

    fn numbers<T: std::str::FromStr>(&mut self, count: usize) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                self.expect(',')?;
            }
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn number_list(&mut self) -> Result<Vec<u64>, ParseError> {
        let mut out = vec![self.number()?];
        while self.rest().starts_with(',') {
            self.pos += 1;
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<GraphExpr, ParseError> {
        let start = self.pos;
        let name = self.word();
        let takes_args = !matches!(name, "petersen" | "icosahedron" | "gosset" | "taylor-co3");
        if !ATOMS.contains(&name) {
            let msg = if name.is_empty() {
                "expected a graph name".to_string()
            } else {
                format!("unknown graph name '{name}' (expected one of {})", ATOMS.join(", "))
            };
            return self.err(start, msg);
        }
        if takes_args {
            self.expect(':')?;
        }
        Ok(match name {
            "complete" => GraphExpr::Complete(self.number()?),
            "cycle" => GraphExpr::Cycle(self.number()?),
            "johnson" => {
                let v = self.numbers(2)?;
                GraphExpr::Johnson(v[0], v[1])
            }
            "paley" => GraphExpr::Paley(self.number()?),
            "petersen" => GraphExpr::Petersen,
            "icosahedron" => GraphExpr::Icosahedron,
            "gosset" => GraphExpr::Gosset,
            "taylor-co3" => GraphExpr::TaylorCo3,
            "srg" => {
                let v = self.numbers(4)?;
                GraphExpr::Srg(SrgParams::new(v[0], v[1], v[2], v[3]))
            }
            "drg" => {
                let b = self.number_list()?;
                self.expect(';')?;
                let c = self.numbers(b.len())?;
                GraphExpr::Drg { b, c }
            }
            "g6" => {
                let s = self.pos;
                let len = self.rest().bytes().take_while(|b| (63..=126).contains(b)).count();
                if len == 0 {
                    return self.err(s, "expected a graph6 string");
                }
                self.pos += len;
                GraphExpr::G6(self.src[s..self.pos].to_string())
            }
            "union" => {
                let a = self.expr()?;
                self.expect('+')?;
                let b = self.expr()?;
                GraphExpr::Union(Box::new(a), Box::new(b))
            }
            "complement" => GraphExpr::Complement(Box::new(self.expr()?)),
            "blowup" => {
                let a = self.expr()?;
                self.expect(',')?;
                let t_at = self.pos;
                let t: usize = self.number()?;
                if t == 0 {
                    return self.err(t_at, "blowup factor must be at least 1");
                }
                GraphExpr::Blowup(Box::new(a), t)
            }
            _ => unreachable!("checked against ATOMS"),
        })
    }
}

impl GraphExpr {
    pub fn parse(src: &str) -> Result<GraphExpr, ParseError> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        if p.pos != src.len() {
            return p.err(p.pos, "unexpected trailing input");
        }
        Ok(e)
    }
}

impl std::str::FromStr for GraphExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphExpr::parse(s)
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Complete(n) => write!(f, "complete:{n}"),
            GraphExpr::Cycle(n) => write!(f, "cycle:{n}"),
            GraphExpr::Johnson(m, r) => write!(f, "johnson:{m},{r}"),
            GraphExpr::Paley(q) => write!(f, "paley:{q}"),
            GraphExpr::Petersen => f.write_str("petersen"),
            GraphExpr::Icosahedron => f.write_str("icosahedron"),
            GraphExpr::Gosset => f.write_str("gosset"),
            GraphExpr::TaylorCo3 => f.write_str("taylor-co3"),
            GraphExpr::Srg(p) => write!(f, "srg:{},{},{},{}", p.v, p.k, p.lambda, p.mu),
            GraphExpr::Drg { b, c } => write!(f, "drg:{};{}", join(b), join(c)),
            GraphExpr::G6(s) => write!(f, "g6:{s}"),
            GraphExpr::Union(a, b) => write!(f, "union:{a}+{b}"),
            GraphExpr::Complement(a) => write!(f, "complement:{a}"),
            GraphExpr::Blowup(a, t) => write!(f, "blowup:{a},{t}"),
        }
    }
}

fn need_graph<'d>(d: &'d SpectralDescriptor, op: &str) -> ckbound::Result<&'d Graph> {
    d.graph().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{op} needs an explicit graph, but '{}' is only known by its spectrum",
            d.name
        ))
    })
}

/// Spectrum of the complement of a regular graph: `n-1-k` once, and
/// `-1-θ` for every other eigenvalue (one copy of `k` is dropped).
fn regular_complement_spectrum(g: &Graph, s: &Spectrum) -> Option<Spectrum> {
    let k = g.regular_degree()?;
    if !s.is_exact() {
        return None;
    }
    let top = EigenValue::integer(k as i128);
    let mut dropped = false;
    let mut pairs = vec![(EigenValue::integer(g.n() as i128 - 1 - k as i128), 1)];
    for &(v, m) in s.pairs() {
        let m = if !dropped && v == top {
            dropped = true;
            m - 1
        } else {
            m
        };
        pairs.push((v.affine(Rational::from_integer(-1), Rational::from_integer(-1)), m));
    }
    Spectrum::from_pairs(pairs).ok()
}

fn with_spectrum(name: String, g: Graph, exact: Option<Spectrum>) -> ckbound::Result<SpectralDescriptor> {
    match exact {
        Some(s) => SpectralDescriptor::explicit_exact(name, g, s),
        None => SpectralDescriptor::explicit(name, g),
    }
}

impl GraphExpr {
    /// Builds the descriptor. Exact spectra are carried through the
    /// combinators wherever a closed form exists.
    pub fn resolve(&self) -> ckbound::Result<SpectralDescriptor> {
        let mut d = match self {
            GraphExpr::Complete(n) => complete_descriptor(*n)?,
            GraphExpr::Cycle(n) => cycle_descriptor(*n)?,
            GraphExpr::Johnson(m, r) => johnson_descriptor(*m, *r)?,
            GraphExpr::Paley(q) => paley_descriptor(*q)?,
            GraphExpr::Petersen => petersen_descriptor()?,
            GraphExpr::Icosahedron => icosahedron_descriptor()?,
            GraphExpr::Gosset => gosset_descriptor()?,
            GraphExpr::TaylorCo3 => taylor_co3_descriptor()?,
            GraphExpr::Srg(p) => srg_spectrum(*p)?,
            GraphExpr::Drg { b, c } => drg_spectrum(&IntersectionArray::new(b.clone(), c.clone())?)?,
            GraphExpr::G6(s) => {
                let g = g6_decode(s.as_bytes())?;
                // Accept only the canonical encoding so the name round-trips.
                if g6_encode(&g)? != *s {
                    return Err(Error::InvalidArgument(format!(
                        "'{s}' is not a canonical graph6 string"
                    )));
                }
                SpectralDescriptor::explicit(self.to_string(), g)?
            }
            GraphExpr::Union(a, b) => {
                let (da, db) = (a.resolve()?, b.resolve()?);
                let g = disjoint_union(need_graph(&da, "union")?, need_graph(&db, "union")?);
                let exact = (da.spectrum().is_exact() && db.spectrum().is_exact())
                    .then(|| Spectrum::from_pairs(da.spectrum().pairs().iter().chain(db.spectrum().pairs()).copied()))
                    .transpose()?;
                with_spectrum(self.to_string(), g, exact)?
            }
            GraphExpr::Complement(a) => {
                let da = a.resolve()?;
                let base = need_graph(&da, "complement")?;
                let exact = regular_complement_spectrum(base, da.spectrum());
                with_spectrum(self.to_string(), complement(base), exact)?
            }
            GraphExpr::Blowup(a, t) => {
                let da = a.resolve()?;
                let g = closed_blowup_graph(need_graph(&da, "blowup")?, *t)?;
                let exact = da
                    .spectrum()
                    .is_exact()
                    .then(|| blowup_spectrum(&da, *t).map(|b| b.spectrum))
                    .transpose()?;
                with_spectrum(self.to_string(), g, exact)?
            }
        };
        d.name = self.to_string();
        Ok(d)
    }
}
