//! Plain-text formats for complexes, chains, maps and lattice bases.
//!
//! Blank lines and `#` comments are ignored everywhere.
//!
//! ```text
//! dim 2            complex: optional header, optional `scale p/q`,
//! s 0 1 2          then one simplex per line
//!
//! deg 2            chain or cochain: header, then `c v0 .. vk coeff`
//! c 0 1 2 -3/2     (vertex order gives the orientation)
//!
//! 0 -> 4           map: one vertex assignment per line
//!
//! N 2 vecs 2       lattice: header, then one basis vector per line
//! 1 0
//! 0 1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num::BigRational;

use crate::chain::Cells;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gadget::LatticeBasis;

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| err(line, format!("bad number '{tok}'")))
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut cells = Vec::new();
    let mut dim = None;
    let mut scale = None;
    for (ln, toks) in lines(text) {
        match toks[0] {
            "dim" if toks.len() == 2 => dim = Some((ln, num::<usize>(ln, toks[1])?)),
            "scale" if toks.len() == 2 => {
                let s: BigRational = num(ln, toks[1])?;
                if s <= BigRational::from_integer(0.into()) {
                    return Err(err(ln, "scale must be positive"));
                }
                scale = Some(s);
            }
            "s" if toks.len() >= 2 => {
                let v = toks[1..].iter().map(|t| num::<usize>(ln, t)).collect::<Result<Vec<_>>>()?;
                let mut sorted = v.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(err(ln, "repeated vertex"));
                }
                cells.push(v);
            }
            _ => return Err(err(ln, format!("unexpected '{}'", toks.join(" ")))),
        }
    }
    if cells.is_empty() {
        return Err(err(0, "no simplices"));
    }
    let mut x = SimplicialComplex::from_maximal(cells)?;
    if let Some((ln, d)) = dim {
        if d != x.dim() {
            return Err(err(ln, format!("header says dim {d}, simplices give {}", x.dim())));
        }
    }
    if let Some(s) = scale {
        x = x.with_edge_scale(s);
    }
    Ok(x)
}

pub fn write_complex(x: &SimplicialComplex) -> String {
    let mut out = format!("dim {}\n", x.dim());
    if !num::One::is_one(x.edge_scale()) {
        writeln!(out, "scale {}", x.edge_scale()).unwrap();
    }
    for s in x.maximal_simplices() {
        let vs: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        writeln!(out, "s {}", vs.join(" ")).unwrap();
    }
    out
}

pub fn parse_cells<R>(text: &str) -> Result<Cells<R>> {
    let mut out: Option<Cells<R>> = None;
    for (ln, toks) in lines(text) {
        match (toks[0], &mut out) {
            ("deg", None) if toks.len() == 2 => out = Some(Cells::zero(num(ln, toks[1])?)),
            ("c", Some(c)) if toks.len() >= 3 => {
                let coeff: BigRational = num(ln, toks[toks.len() - 1])?;
                let v = toks[1..toks.len() - 1].iter().map(|t| num::<usize>(ln, t)).collect::<Result<Vec<_>>>()?;
                let term = Cells::<R>::from_oriented(c.degree(), [(v, coeff)]).map_err(|e| err(ln, e.to_string()))?;
                *c = c.add(&term);
            }
            ("c", None) => return Err(err(ln, "missing 'deg' header")),
            _ => return Err(err(ln, format!("unexpected '{}'", toks.join(" ")))),
        }
    }
    out.ok_or_else(|| err(0, "missing 'deg' header"))
}

pub fn write_cells<R>(c: &Cells<R>) -> String {
    let mut out = format!("deg {}\n", c.degree());
    for (s, v) in c.iter() {
        let vs: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        writeln!(out, "c {} {}", vs.join(" "), v).unwrap();
    }
    out
}

pub fn parse_vertex_map(text: &str) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for (ln, toks) in lines(text) {
        if toks.len() != 3 || toks[1] != "->" {
            return Err(err(ln, "expected 'a -> b'"));
        }
        let a = num(ln, toks[0])?;
        if out.insert(a, num(ln, toks[2])?).is_some() {
            return Err(err(ln, format!("vertex {a} assigned twice")));
        }
    }
    Ok(out)
}

pub fn write_vertex_map(m: &BTreeMap<usize, usize>) -> String {
    m.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect()
}

pub fn parse_lattice(text: &str) -> Result<LatticeBasis> {
    let mut it = lines(text);
    let (ln, head) = it.next().ok_or_else(|| err(0, "empty lattice file"))?;
    if head.len() != 4 || head[0] != "N" || head[2] != "vecs" {
        return Err(err(ln, "expected 'N <dim> vecs <count>'"));
    }
    let dim: usize = num(ln, head[1])?;
    let count: usize = num(ln, head[3])?;
    let mut vectors = Vec::with_capacity(count);
    for (ln, toks) in it {
        if toks.len() != dim {
            return Err(err(ln, format!("expected {dim} entries, found {}", toks.len())));
        }
        vectors.push(toks.iter().map(|t| num::<i64>(ln, t)).collect::<Result<Vec<_>>>()?);
    }
    if vectors.len() != count {
        return Err(err(0, format!("header promises {count} vectors, found {}", vectors.len())));
    }
    LatticeBasis::new(dim, vectors)
}

pub fn write_lattice(b: &LatticeBasis) -> String {
    let mut out = format!("N {} vecs {}\n", b.dim, b.vectors.len());
    for v in &b.vectors {
        let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", vs.join(" ")).unwrap();
    }
    out
}
