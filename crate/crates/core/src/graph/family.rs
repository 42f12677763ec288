use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// A named graph family or an operation on families.
///
/// Textual form (used by the CLI `--family` flag):
///
/// ```text
/// complete:5  cycle:6  path:4  star:3  empty:4  bipartite:2,3
/// multipartite:2,2,2  prism:3
/// complement(F)  line(F)  join(F,G)  union(F,G)  product(F,G)  minus(F,G)
/// unmatch(F;0,1,2;3,4,5)
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Star(usize),
    Empty(usize),
    Multipartite(Vec<usize>),
    /// `K_s □ K_2`
    Prism(usize),
    Complement(Box<Family>),
    Line(Box<Family>),
    Join(Box<Family>, Box<Family>),
    Union(Box<Family>, Box<Family>),
    Product(Box<Family>, Box<Family>),
    /// Edges of the second graph removed from the first.
    Minus(Box<Family>, Box<Family>),
    /// Remove the perfect matching `left[i] -- right[i]`.
    Unmatch(Box<Family>, Vec<usize>, Vec<usize>),
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match self {
            Family::Complete(n) => Graph::complete(*n),
            Family::Cycle(n) => Graph::cycle(*n),
            Family::Path(n) => Graph::path(*n),
            Family::Star(t) => Graph::star(*t),
            Family::Empty(n) => Ok(Graph::empty(*n)),
            Family::Multipartite(parts) => Graph::complete_multipartite(parts),
            Family::Prism(s) => {
                if *s == 0 {
                    return Err(Error::InvalidParameters("prism needs s >= 1".into()));
                }
                Ok(Graph::complete(*s)?.cartesian_product(&Graph::complete(2)?))
            }
            Family::Complement(f) => Ok(f.build()?.complement()),
            Family::Line(f) => Ok(f.build()?.line_graph()),
            Family::Join(a, b) => Ok(a.build()?.join(&b.build()?)),
            Family::Union(a, b) => Ok(a.build()?.disjoint_union(&b.build()?)),
            Family::Product(a, b) => Ok(a.build()?.cartesian_product(&b.build()?)),
            Family::Minus(a, b) => a.build()?.remove_edges(&b.build()?),
            Family::Unmatch(f, l, r) => f.build()?.remove_perfect_matching(l, r),
        }
    }
}

/// Build a graph from its textual family description.
pub fn build_named(spec: &str) -> Result<Graph> {
    spec.parse::<Family>()?.build()
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.trim(), pos: 0 };
        let f = p.family()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            line: 1,
            message: format!("family '{}': {msg} at offset {}", self.src, self.pos),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn numbers(&mut self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        loop {
            let len = self
                .rest()
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(self.rest().len());
            let text = &self.src[self.pos..self.pos + len];
            out.push(text.parse::<usize>().map_err(|_| self.error("expected an integer"))?);
            self.pos += len;
            let rest = self.rest();
            if rest.starts_with(',') && rest[1..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn family(&mut self) -> Result<Family> {
        let name = self.ident().to_ascii_lowercase();
        let one = |v: Vec<usize>, p: &Self| -> Result<usize> {
            match v.as_slice() {
                [x] => Ok(*x),
                _ => Err(p.error("expected exactly one parameter")),
            }
        };
        match name.as_str() {
            "complete" | "k" | "cycle" | "c" | "path" | "p" | "star" | "empty" | "bipartite"
            | "multipartite" | "prism" => {
                self.eat(':')?;
                let args = self.numbers()?;
                Ok(match name.as_str() {
                    "complete" | "k" => Family::Complete(one(args, self)?),
                    "cycle" | "c" => Family::Cycle(one(args, self)?),
                    "path" | "p" => Family::Path(one(args, self)?),
                    "star" => Family::Star(one(args, self)?),
                    "empty" => Family::Empty(one(args, self)?),
                    "prism" => Family::Prism(one(args, self)?),
                    "bipartite" => match args.as_slice() {
                        [a, b] => Family::Multipartite(vec![*a, *b]),
                        _ => return Err(self.error("bipartite takes two sizes")),
                    },
                    _ => Family::Multipartite(args),
                })
            }
            "complement" | "line" => {
                self.eat('(')?;
                let inner = Box::new(self.family()?);
                self.eat(')')?;
                Ok(if name == "line" {
                    Family::Line(inner)
                } else {
                    Family::Complement(inner)
                })
            }
            "join" | "union" | "product" | "minus" => {
                self.eat('(')?;
                let a = Box::new(self.family()?);
                self.eat(',')?;
                let b = Box::new(self.family()?);
                self.eat(')')?;
                Ok(match name.as_str() {
                    "join" => Family::Join(a, b),
                    "union" => Family::Union(a, b),
                    "product" => Family::Product(a, b),
                    _ => Family::Minus(a, b),
                })
            }
            "unmatch" => {
                self.eat('(')?;
                let f = Box::new(self.family()?);
                self.eat(';')?;
                let l = self.numbers()?;
                self.eat(';')?;
                let r = self.numbers()?;
                self.eat(')')?;
                Ok(Family::Unmatch(f, l, r))
            }
            "" => Err(self.error("expected a family name")),
            other => Err(Error::UnknownName(format!("graph family '{other}'"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Star(n) => write!(f, "star:{n}"),
            Family::Empty(n) => write!(f, "empty:{n}"),
            Family::Multipartite(p) => write!(f, "multipartite:{}", join(p)),
            Family::Prism(s) => write!(f, "prism:{s}"),
            Family::Complement(a) => write!(f, "complement({a})"),
            Family::Line(a) => write!(f, "line({a})"),
            Family::Join(a, b) => write!(f, "join({a},{b})"),
            Family::Union(a, b) => write!(f, "union({a},{b})"),
            Family::Product(a, b) => write!(f, "product({a},{b})"),
            Family::Minus(a, b) => write!(f, "minus({a},{b})"),
            Family::Unmatch(a, l, r) => write!(f, "unmatch({a};{};{})", join(l), join(r)),
        }
    }
}
