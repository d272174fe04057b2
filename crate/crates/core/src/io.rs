//! Text format for Frobenius modules.
//!
//! ```text
//! # the F_3 example
//! p = 3
//! e = 1
//! ring = prime
//! n = 2
//! matrix = 0, 1, 1, 1
//! column = 1, 0
//! ```
//!
//! `matrix` lists the structure matrix row by row. Each optional `column`
//! line gives a vector (a subspace or submodule generator); the optional
//! `basis` line gives a change-of-basis matrix row by row. Entries are ring
//! literals separated by top-level commas. `ring` is one of `prime`,
//! `ext:<m>`, `ext:<modulus in u>`, `poly`, `ratfunc`, `perfect` or
//! `quotient:<modulus in t>`.

use crate::arith::{
    validate_prime, AnyRing, GaloisField, PerfectClosure, PolyRing, QuotientRing, RatFuncField,
    Ring, RingDescriptor,
};
use crate::error::{Error, Result};
use crate::frobmod::FrobModule;
use crate::matrix::Matrix;

/// A parsed module description.
#[derive(Clone, Debug, PartialEq)]
pub struct Document<R: Ring> {
    pub module: FrobModule<R>,
    pub columns: Vec<Vec<R::Elem>>,
    pub basis: Option<Matrix<R::Elem>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyDocument {
    Galois(Document<GaloisField>),
    Poly(Document<PolyRing>),
    RatFunc(Document<RatFuncField>),
    Perfect(Document<PerfectClosure>),
    Quotient(Document<QuotientRing>),
}

#[macro_export]
#[doc(hidden)]
macro_rules! with_document {
    ($doc:expr, $d:ident => $body:expr) => {
        match $doc {
            $crate::io::AnyDocument::Galois($d) => $body,
            $crate::io::AnyDocument::Poly($d) => $body,
            $crate::io::AnyDocument::RatFunc($d) => $body,
            $crate::io::AnyDocument::Perfect($d) => $body,
            $crate::io::AnyDocument::Quotient($d) => $body,
        }
    };
}

/// A literal with its position in the source.
#[derive(Clone, Debug)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    /// Zero-based character offset of `text` within its line.
    offset: usize,
}

impl Span<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.offset + 1,
            message: message.into(),
        }
    }
}

/// Splits at commas outside parentheses, keeping offsets and trimming.
fn split_entries<'a>(value: &Span<'a>) -> Vec<Span<'a>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = value.text;
    let mut push = |s: usize, e: usize| {
        let raw = &bytes[s..e];
        let lead = raw.len() - raw.trim_start().len();
        out.push(Span {
            text: raw.trim(),
            line: value.line,
            offset: value.offset + bytes[..s + lead].chars().count(),
        });
    };
    for (i, c) in bytes.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                push(start, i);
                start = i + 1;
            }
            _ => {}
        }
    }
    push(start, bytes.len());
    out
}

#[derive(Default)]
struct Raw<'a> {
    p: Option<Span<'a>>,
    e: Option<Span<'a>>,
    ring: Option<Span<'a>>,
    n: Option<Span<'a>>,
    matrix: Option<Span<'a>>,
    columns: Vec<Span<'a>>,
    basis: Option<Span<'a>>,
}

fn scan(text: &str) -> Result<Raw<'_>> {
    let mut raw = Raw::default();
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let content = full.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let key_offset = content.chars().count() - content.trim_start().chars().count();
        let Some(eq) = content.find('=') else {
            return Err(Error::Parse {
                line,
                column: key_offset + 1,
                message: "expected `key = value`".into(),
            });
        };
        let key = content[..eq].trim();
        let after = &content[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        let value = Span {
            text: after.trim(),
            line,
            offset: content[..eq + 1 + lead].chars().count(),
        };
        let slot = match key {
            "p" => &mut raw.p,
            "e" => &mut raw.e,
            "ring" => &mut raw.ring,
            "n" => &mut raw.n,
            "matrix" => &mut raw.matrix,
            "basis" => &mut raw.basis,
            "column" => {
                raw.columns.push(value);
                continue;
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column: key_offset + 1,
                    message: format!("unknown field `{other}`"),
                })
            }
        };
        if slot.is_some() {
            return Err(Error::Parse {
                line,
                column: key_offset + 1,
                message: format!("duplicate field `{key}`"),
            });
        }
        *slot = Some(value);
    }
    Ok(raw)
}

fn required<'a>(field: &Option<Span<'a>>, name: &str) -> Result<Span<'a>> {
    field
        .clone()
        .ok_or_else(|| Error::Validation(format!("missing field `{name}`")))
}

fn integer<T: std::str::FromStr>(span: &Span) -> Result<T> {
    span.text
        .parse()
        .map_err(|_| span.error(format!("expected a nonnegative integer, found `{}`", span.text)))
}

fn entries<R: Ring>(ring: &R, span: &Span, expected: usize, what: &str) -> Result<Vec<R::Elem>> {
    let parts = split_entries(span);
    if parts.len() != expected {
        return Err(Error::Validation(format!(
            "line {}: {what} has {} entries, expected {expected}",
            span.line,
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|part| {
            if part.text.is_empty() {
                return Err(part.error("empty entry"));
            }
            ring.parse(part.text).map_err(|e| e.at_line(part.line, part.offset))
        })
        .collect()
}

fn build<R: Ring>(ring: R, e: u32, n: usize, raw: &Raw) -> Result<Document<R>> {
    let matrix_span = required(&raw.matrix, "matrix")?;
    let a = Matrix::from_vec(n, n, entries(&ring, &matrix_span, n * n, "matrix")?)?;
    let columns = raw
        .columns
        .iter()
        .map(|c| entries(&ring, c, n, "column"))
        .collect::<Result<Vec<_>>>()?;
    let basis = match &raw.basis {
        Some(b) => Some(Matrix::from_vec(n, n, entries(&ring, b, n * n, "basis")?)?),
        None => None,
    };
    Ok(Document {
        module: FrobModule::new(ring, e, a)?,
        columns,
        basis,
    })
}

/// Parses and validates a module description.
pub fn parse_document(text: &str) -> Result<AnyDocument> {
    let raw = scan(text)?;
    let p_span = required(&raw.p, "p")?;
    let p: u64 = integer(&p_span)?;
    validate_prime(p)?;
    let e: u32 = match &raw.e {
        Some(span) => integer(span)?,
        None => 1,
    };
    if e == 0 {
        return Err(Error::Validation("twist e must be at least 1".into()));
    }
    let n: usize = integer(&required(&raw.n, "n")?)?;
    if n == 0 {
        return Err(Error::Validation("rank n must be at least 1".into()));
    }
    let ring_span = required(&raw.ring, "ring")?;
    let ring = RingDescriptor::parse(p, ring_span.text)
        .map_err(|err| err.at_line(ring_span.line, ring_span.offset + 5))?;
    Ok(match ring {
        AnyRing::Galois(r) => AnyDocument::Galois(build(r, e, n, &raw)?),
        AnyRing::Poly(r) => AnyDocument::Poly(build(r, e, n, &raw)?),
        AnyRing::RatFunc(r) => AnyDocument::RatFunc(build(r, e, n, &raw)?),
        AnyRing::Perfect(r) => AnyDocument::Perfect(build(r, e, n, &raw)?),
        AnyRing::Quotient(r) => AnyDocument::Quotient(build(r, e, n, &raw)?),
    })
}

fn join<R: Ring>(ring: &R, items: &[R::Elem]) -> String {
    items
        .iter()
        .map(|x| ring.render(x))
        .collect::<Vec<_>>()
        .join(", ")
}

impl<R: Ring> Document<R> {
    pub fn new(module: FrobModule<R>) -> Self {
        Document {
            module,
            columns: vec![],
            basis: None,
        }
    }

    /// Canonical text; parsing it gives back an equal document.
    pub fn emit(&self) -> String {
        let ring = self.module.ring();
        let descriptor = ring.descriptor();
        let mut out = format!(
            "p = {}\ne = {}\nring = {}\nn = {}\nmatrix = {}\n",
            descriptor.p(),
            self.module.e(),
            descriptor.spec(),
            self.module.n(),
            join(ring, self.module.matrix().entries())
        );
        for c in &self.columns {
            out.push_str(&format!("column = {}\n", join(ring, c)));
        }
        if let Some(b) = &self.basis {
            out.push_str(&format!("basis = {}\n", join(ring, b.entries())));
        }
        out
    }
}

impl AnyDocument {
    pub fn emit(&self) -> String {
        with_document!(self, d => d.emit())
    }

    pub fn descriptor(&self) -> RingDescriptor {
        with_document!(self, d => d.module.ring().descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F3: &str = "# the F_3 example\np = 3\ne = 1\nring = prime\nn = 2\nmatrix = 0, 1, 1, 1\n";

    #[test]
    fn parses_the_f3_example() {
        let AnyDocument::Galois(doc) = parse_document(F3).unwrap() else {
            panic!("expected a finite field document");
        };
        assert!(doc.module.is_unit());
        assert_eq!(doc.module.n(), 2);
    }

    #[test]
    fn emit_roundtrips() {
        for text in [
            F3,
            "p = 2\nring = poly\nn = 2\nmatrix = 0, 1, 1, x\ncolumn = 1, 0\ncolumn = x^2+1, x\n",
            "p = 3\ne = 2\nring = ext:2\nn = 1\nmatrix = u+1\nbasis = u\n",
            "p = 3\nring = ratfunc\nn = 1\nmatrix = (x+1)/(x^2+2)\n",
            "p = 3\nring = perfect\nn = 2\nmatrix = (x, 2), 1, 0, (x^2+1, 1)\n",
            "p = 2\nring = quotient:t^4+x*t^2+t\nn = 2\nmatrix = 0, 1, 1, x\ncolumn = t^2, t\n",
        ] {
            let doc = parse_document(text).unwrap();
            let emitted = doc.emit();
            let again = parse_document(&emitted).unwrap();
            assert_eq!(again, doc, "{emitted}");
            assert_eq!(again.emit(), emitted);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_document("p = 3\nring = poly\nn = 1\nmatrix = x^2+*1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                column: 14,
                message: "unexpected `*`".into()
            }
        );
        let err = parse_document("p = 3\nring = prime\nn = 2\nmatrix = 0, 1, 1, foo\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, column: 19, .. }), "{err:?}");
        assert!(matches!(parse_document("p = 3\nbogus = 1\n"), Err(Error::Parse { line: 2, column: 1, .. })));
        assert!(matches!(parse_document("p = 3\np = 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_document("p 3\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn validation_errors() {
        for text in [
            "p = 3\nring = prime\nn = 0\nmatrix = 1\n",
            "p = 4\nring = prime\nn = 1\nmatrix = 1\n",
            "p = 3\nring = prime\nn = 2\nmatrix = 1, 0, 0\n",
            "p = 3\nring = prime\nn = 1\n",
            "p = 3\ne = 0\nring = prime\nn = 1\nmatrix = 1\n",
            "p = 3\nring = ext:u^2+2\nn = 1\nmatrix = 1\n",
        ] {
            assert!(matches!(parse_document(text), Err(Error::Validation(_))), "{text}");
        }
    }
}
