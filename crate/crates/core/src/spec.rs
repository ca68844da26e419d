//! Short text specs for heaps, coefficient groups, cocycles and example
//! surfaces, as accepted on the command line.
//!
//! ```
//! use ribbonheap::spec::{parse_builder, parse_heap};
//! use std::path::Path;
//!
//! let x = parse_heap("dihedral:3", Path::new(".")).unwrap();
//! assert_eq!(x.size(), 6);
//! let d = parse_builder("loops:2,3;1").unwrap();
//! assert_eq!(d.validate().unwrap().nu(), 1);
//! ```

use std::path::Path;

use crate::abelian::AbelianGroup;
use crate::cochain::{self, Cochain2};
use crate::diagram::{builders, parse_srd, RibbonDiagram};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::heap::{group_heap, FiniteHeap};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn bad(column: usize, message: impl Into<String>) -> Error {
    Error::parse(1, column, message)
}

/// Splits `name:rest` and reports the column where `rest` starts.
fn head(spec: &str) -> (&str, &str, usize) {
    match spec.split_once(':') {
        Some((name, rest)) => (name, rest, name.chars().count() + 2),
        None => (spec, "", spec.chars().count() + 1),
    }
}

fn number(tok: &str, column: usize) -> Result<usize> {
    tok.trim()
        .parse()
        .map_err(|_| bad(column, format!("expected a number, found `{tok}`")))
}

/// Comma-separated numbers starting at `column`.
fn numbers(text: &str, column: usize) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut col = column;
    let mut out = Vec::new();
    for tok in text.split(',') {
        out.push(number(tok, col)?);
        col += tok.chars().count() + 1;
    }
    Ok(out)
}

fn exactly<const N: usize>(text: &str, column: usize) -> Result<[usize; N]> {
    let v = numbers(text, column)?;
    v.clone()
        .try_into()
        .map_err(|_| bad(column, format!("expected {N} numbers, found {}", v.len())))
}

/// `cyclic:n`, `dihedral:n`, or a multiplication-table file (relative paths
/// resolve against `base`).
pub fn parse_heap(spec: &str, base: &Path) -> Result<FiniteHeap> {
    Ok(group_heap(&parse_group(spec, base)?))
}

pub fn parse_group(spec: &str, base: &Path) -> Result<FiniteGroup> {
    let (name, rest, col) = head(spec);
    match name {
        "cyclic" => FiniteGroup::cyclic(exactly::<1>(rest, col)?[0]),
        "dihedral" => FiniteGroup::dihedral(exactly::<1>(rest, col)?[0]),
        _ => FiniteGroup::parse_table(&read(&base.join(spec))?),
    }
}

/// `cyclic:n` or `product:n1,n2,…`.
pub fn parse_coeffs(spec: &str) -> Result<AbelianGroup> {
    let (name, rest, col) = head(spec);
    match name {
        "cyclic" => AbelianGroup::cyclic(exactly::<1>(rest, col)?[0]),
        "product" => AbelianGroup::new(numbers(rest, col)?),
        _ => Err(bad(1, format!("unknown coefficient group `{name}`"))),
    }
}

/// One cocycle: `zero`, `phi:n:i`, `phivec:n:a0,…`, `psiD:n:i`,
/// `psivec:n:a0,…`, `ring:n:a,b`, `cobdy:<file>` or a table file of
/// `x y z value` lines. Built-in families must live on `heap` and `coeffs`.
pub fn parse_cocycle(spec: &str, heap: &FiniteHeap, coeffs: &AbelianGroup, base: &Path) -> Result<Cochain2> {
    let (name, rest, col) = head(spec);
    let psi = match name {
        "zero" => return Ok(Cochain2::zero(heap, coeffs)),
        "phi" => {
            let (n, tail, c) = family(rest, col)?;
            cochain::phi_i(n, exactly::<1>(tail, c)?[0])?
        }
        "phivec" => {
            let (n, tail, c) = family(rest, col)?;
            cochain::phi_vec(n, &numbers(tail, c)?)?
        }
        "psiD" => {
            let (n, tail, c) = family(rest, col)?;
            cochain::psi_i_dihedral(n, exactly::<1>(tail, c)?[0])?
        }
        "psivec" => {
            let (n, tail, c) = family(rest, col)?;
            cochain::psi_vec(n, &numbers(tail, c)?)?
        }
        "ring" => {
            let (n, tail, c) = family(rest, col)?;
            let [a, b] = exactly::<2>(tail, c)?;
            cochain::ring_cocycle(n, a, b)?
        }
        "cobdy" => {
            let text = read(&base.join(rest))?;
            let f = parse_function(&text, heap, coeffs)?;
            return cochain::coboundary(heap, coeffs, &f);
        }
        _ => return Cochain2::parse_table(&read(&base.join(spec))?, heap, coeffs),
    };
    if psi.heap().op() != heap.op() {
        return Err(Error::CarrierMismatch(format!(
            "`{spec}` lives on a heap of size {}",
            psi.heap().size()
        )));
    }
    if psi.coeffs() != coeffs {
        return Err(Error::CoefficientMismatch(format!(
            "`{spec}` takes values in {}",
            psi.coeffs()
        )));
    }
    Ok(psi)
}

/// Coefficients implied by a cocycle spec when none are given: `Z_n` for the
/// built-in families, `Z_|X|` otherwise.
pub fn default_coeffs(spec: &str, heap: &FiniteHeap) -> Result<AbelianGroup> {
    let (name, rest, col) = head(spec);
    match name {
        "phi" | "phivec" | "psiD" | "psivec" | "ring" => AbelianGroup::cyclic(family(rest, col)?.0),
        _ => AbelianGroup::cyclic(heap.size()),
    }
}

/// Splits `n:tail` for a cocycle family.
fn family(rest: &str, col: usize) -> Result<(usize, &str, usize)> {
    let (n, tail) = rest.split_once(':').unwrap_or((rest, ""));
    Ok((number(n, col)?, tail, col + n.chars().count() + 1))
}

/// Comma-separated cocycle specs, one per surface component.
pub fn parse_cocycles(spec: &str, heap: &FiniteHeap, coeffs: &AbelianGroup, base: &Path) -> Result<Vec<Cochain2>> {
    split_top(spec)
        .into_iter()
        .map(|s| parse_cocycle(s, heap, coeffs, base))
        .collect()
}

/// Splits on commas that start a new spec: a piece is glued to the previous
/// one when it does not begin with a spec name.
fn split_top(spec: &str) -> Vec<&str> {
    let mut out: Vec<&str> = Vec::new();
    let mut start = 0;
    for (i, _) in spec.match_indices(',') {
        let next = &spec[i + 1..];
        if next.starts_with(|c: char| c.is_ascii_alphabetic() || c == '.' || c == '/') {
            out.push(&spec[start..i]);
            start = i + 1;
        }
    }
    out.push(&spec[start..]);
    out
}

/// A function `X → A`: one value per element, whitespace separated, each a
/// comma-separated list of coordinates when `A` has several factors.
pub fn parse_function(text: &str, heap: &FiniteHeap, coeffs: &AbelianGroup) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let col = line.find(tok).unwrap_or(0) + 1;
            let digits = numbers(tok, col).map_err(|_| Error::parse(ln + 1, col, format!("bad value `{tok}`")))?;
            if digits.len() != coeffs.factors().len() || digits.iter().zip(coeffs.factors()).any(|(d, f)| d >= f) {
                return Err(Error::parse(
                    ln + 1,
                    col,
                    format!("`{tok}` is not an element of {coeffs}"),
                ));
            }
            out.push(coeffs.encode(&digits));
        }
    }
    if out.len() != heap.size() {
        return Err(Error::LengthMismatch {
            expected: heap.size(),
            got: out.len(),
        });
    }
    Ok(out)
}

/// `disk`, `annulus`, `bands:m,n`, `looped:m`, `loops:m1,…;k`, `torus:k`,
/// `rings3` or `hopf`.
pub fn parse_builder(spec: &str) -> Result<RibbonDiagram> {
    let (name, rest, col) = head(spec);
    let none = |d: RibbonDiagram| {
        if rest.is_empty() {
            Ok(d)
        } else {
            Err(bad(col, format!("`{name}` takes no arguments")))
        }
    };
    match name {
        "disk" => none(builders::disk()),
        "annulus" => none(builders::annulus()),
        "rings3" => none(builders::three_annuli_chain()),
        "hopf" => none(builders::hopf_annuli()),
        "bands" => {
            let [m, n] = exactly::<2>(rest, col)?;
            builders::trivial_band_closure(m, n)
        }
        "looped" => Ok(builders::looped_band(exactly::<1>(rest, col)?[0])),
        "torus" => Ok(builders::torus_t1(exactly::<1>(rest, col)?[0])),
        "loops" => {
            let (ms, k) = rest.split_once(';').ok_or_else(|| bad(col, "expected `m1,…;k`"))?;
            let kcol = col + ms.chars().count() + 1;
            builders::punctured_disk(&numbers(ms, col)?, number(k, kcol)?)
        }
        _ => Err(bad(1, format!("unknown builder `{name}`"))),
    }
}

/// A builder spec, or an `.srd` file when the spec names one.
pub fn load_diagram(spec: &str, base: &Path) -> Result<RibbonDiagram> {
    if spec.ends_with(".srd") {
        parse_srd(&read(&base.join(spec))?)
    } else {
        parse_builder(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn here() -> &'static Path {
        Path::new(".")
    }

    #[test]
    fn heaps_and_coefficients() {
        assert_eq!(parse_heap("cyclic:5", here()).unwrap().size(), 5);
        assert_eq!(parse_coeffs("product:2,3").unwrap().order(), 6);
        let e = parse_heap("cyclic:x", here()).unwrap_err();
        assert_eq!(e, Error::parse(1, 8, "expected a number, found `x`"));
    }

    #[test]
    fn cocycle_families_must_match_the_heap() {
        let x = parse_heap("cyclic:3", here()).unwrap();
        let a = parse_coeffs("cyclic:3").unwrap();
        let psi = parse_cocycle("phi:3:1", &x, &a, here()).unwrap();
        assert_eq!(psi, cochain::phi_i(3, 1).unwrap());
        assert!(matches!(
            parse_cocycle("phi:4:1", &x, &a, here()),
            Err(Error::CarrierMismatch(_))
        ));
        let list = parse_cocycles("zero,phivec:3:0,1,2,zero", &x, &a, here()).unwrap();
        assert_eq!(list.len(), 3);
        assert_eq!(list[1], cochain::phi_vec(3, &[0, 1, 2]).unwrap());
        let d6 = parse_heap("dihedral:3", here()).unwrap();
        assert_eq!(default_coeffs("psiD:3:1", &d6).unwrap(), a);
        assert_eq!(default_coeffs("zero", &d6).unwrap().order(), 6);
    }

    #[test]
    fn builders_by_name() {
        let s = parse_builder("bands:1,1").unwrap().validate().unwrap();
        assert_eq!((s.nu(), s.total_boundaries()), (1, 2));
        assert_eq!(parse_builder("rings3").unwrap().validate().unwrap().nu(), 3);
        assert!(parse_builder("loops:2,3").unwrap_err().is_parse());
        assert!(parse_builder("annulus:2").unwrap_err().is_parse());
    }
}
