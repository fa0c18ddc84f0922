//! The `algebra` text format: tokenizer, parser, and printer.
//!
//! A file presents a Lie algebra with complex structure by its structure
//! equations on the (1,0)-coframe `a1, …, an`:
//!
//! ```text
//! algebra iwasawa n=3
//! d a1 = 0
//! d a2 = 0
//! d a3 = -a1^a2
//! ```
//!
//! Each equation line is `d a<j> = <sum>`, where a sum is `0` or `+`/`-`
//! separated terms.  A term is an optional scalar literal followed by a
//! degree-two monomial `a<j>^a<k>`, `a<j>^~a<k>`, or `~a<j>^~a<k>` — the
//! conjugate marker is an explicit `~`, and holomorphic factors always come
//! first.  Scalar literals are rationals (`3`, `-1/2`) or complex literals
//! in the scalar syntax (`(0+1i)`, `(1/2-3/4i)`).  `#` starts a comment;
//! whitespace is never significant.  `meta <key> = <value>` lines carry
//! free-form tags; the key `analytic` marks a coframe direction whose dual
//! coordinate analytic coefficients may depend on.
//!
//! Parsing is total: every rejection is a [`ParseError`] with a line and
//! column, never a panic.  [`AlgebraFile::print`] inverts [`parse`] on
//! files produced by [`AlgebraFile::from_algebra`].

use crate::exterior::Form;
use crate::lie_complex::{ComplexLieAlgebra, ValidationFailure};
use crate::scalar::{GaussRational, Scalar, Q};
use crate::Verdict;
use num::{BigInt, Zero};
use std::fmt::Write as _;

/// A positioned rejection of the input text.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// One coframe factor as written: the index of the equation `d a<index>`
/// side, and whether the factor carries the conjugate marker `~`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoframeFactor {
    pub index: u8,
    pub conjugated: bool,
}

/// A degree-two monomial exactly as written (factor order preserved, so a
/// file saying `a2^a1` keeps that spelling through a print round-trip).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WrittenMonomial {
    pub first: CoframeFactor,
    pub second: CoframeFactor,
}

impl WrittenMonomial {
    /// The wedge of the two factors as a form: `a2^a1` becomes
    /// `−φ^{12}`, a repeated factor becomes zero.
    pub fn to_form(&self, n: u8, c: &GaussRational) -> Form<GaussRational> {
        let (f, s) = (self.first, self.second);
        match (f.conjugated, s.conjugated) {
            (false, false) | (true, true) => {
                if f.index == s.index {
                    return Form::zero(n);
                }
                let (lo, hi, coeff) = if f.index < s.index {
                    (f.index, s.index, c.clone())
                } else {
                    (s.index, f.index, c.neg())
                };
                if f.conjugated {
                    Form::monomial(n, &[], &[lo, hi], coeff)
                } else {
                    Form::monomial(n, &[lo, hi], &[], coeff)
                }
            }
            (false, true) => Form::monomial(n, &[f.index], &[s.index], c.clone()),
            // Anti-holomorphic first: commute past the holomorphic factor.
            (true, false) => Form::monomial(n, &[s.index], &[f.index], c.neg()),
        }
    }
}

/// One summand of a structure equation.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coefficient: GaussRational,
    pub monomial: WrittenMonomial,
}

/// A structure equation `d a<index> = Σ terms`; an empty sum prints as `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub index: u8,
    pub terms: Vec<Term>,
}

impl Equation {
    pub fn form(&self, n: u8) -> Form<GaussRational> {
        self.terms
            .iter()
            .fold(Form::zero(n), |acc, t| &acc + &t.monomial.to_form(n, &t.coefficient))
    }
}

/// A parsed algebra file: header, structure equations (indices not listed
/// are zero), and free metadata tags.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub n: u8,
    pub equations: Vec<Equation>,
    pub metadata: Vec<(String, String)>,
}

/// A file-level defect found by [`AlgebraFile::validate`].
#[derive(Clone, Debug, PartialEq)]
pub enum ValidateIssue {
    /// A written monomial wedges to zero (repeated factor), e.g. `a1^a1`.
    ZeroMonomial { equation_index: u8, monomial: WrittenMonomial },
    /// The induced algebra fails integrability or the Jacobi identity.
    Algebra(ValidationFailure),
}

impl std::fmt::Display for ValidateIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidateIssue::ZeroMonomial { equation_index, monomial } => write!(
                f,
                "d a{equation_index} contains the zero monomial {}",
                print_monomial(monomial)
            ),
            ValidateIssue::Algebra(failure) => write!(f, "{failure:?}"),
        }
    }
}

impl AlgebraFile {
    /// Certify that the file presents a valid algebra: no written monomial
    /// is identically zero, the complex structure is integrable, and the
    /// Jacobi identity holds.
    pub fn validate(&self) -> Verdict<crate::lie_complex::Validated, ValidateIssue> {
        for eq in &self.equations {
            for term in &eq.terms {
                let m = &term.monomial;
                if m.first == m.second {
                    return Verdict::Refuted(ValidateIssue::ZeroMonomial {
                        equation_index: eq.index,
                        monomial: *m,
                    });
                }
            }
        }
        match self.to_algebra().validate() {
            Verdict::Proven(ok) => Verdict::Proven(ok),
            Verdict::Refuted(failure) => Verdict::Refuted(ValidateIssue::Algebra(failure)),
            Verdict::Inconclusive { reason } => Verdict::Inconclusive { reason },
        }
    }

    /// Build the algebra.  Files produced by [`parse`] never panic here; a
    /// hand-built file with an invalid `analytic` tag does (the tag must
    /// name an in-range coframe index with zero differential).
    pub fn to_algebra(&self) -> ComplexLieAlgebra {
        let mut d_alpha = vec![Form::zero(self.n); usize::from(self.n)];
        for eq in &self.equations {
            d_alpha[usize::from(eq.index) - 1] = eq.form(self.n);
        }
        let mut g = ComplexLieAlgebra::new(self.n, d_alpha);
        if let Some(k) = self.analytic_direction() {
            g = g.with_analytic_direction(k);
        }
        g
    }

    /// The coframe index named by the `analytic` metadata tag, if any.
    pub fn analytic_direction(&self) -> Option<u8> {
        self.metadata
            .iter()
            .find(|(k, _)| k == "analytic")
            .and_then(|(_, v)| v.trim().parse().ok())
    }

    /// Present an algebra as a file, with every equation explicit (zero
    /// differentials print as `d a<j> = 0`).
    pub fn from_algebra(name: &str, g: &ComplexLieAlgebra) -> AlgebraFile {
        let n = g.n();
        let mut equations = Vec::new();
        for j in 1..=n {
            let mut terms = Vec::new();
            for (idx, c) in g.structure_equation(j).terms() {
                let hol = idx.hol.to_vec();
                let anti = idx.anti.to_vec();
                let factor = |index: u8, conjugated: bool| CoframeFactor { index, conjugated };
                let (first, second) = match (hol.len(), anti.len()) {
                    (2, 0) => (factor(hol[0], false), factor(hol[1], false)),
                    (1, 1) => (factor(hol[0], false), factor(anti[0], true)),
                    (0, 2) => (factor(anti[0], true), factor(anti[1], true)),
                    _ => unreachable!("structure equations are 2-forms"),
                };
                terms.push(Term { coefficient: c.clone(), monomial: WrittenMonomial { first, second } });
            }
            equations.push(Equation { index: j, terms });
        }
        let mut metadata = Vec::new();
        if let Some(k) = g.analytic_direction() {
            metadata.push(("analytic".to_string(), k.to_string()));
        }
        AlgebraFile { name: name.to_string(), n, equations, metadata }
    }

    /// Render in the file grammar; [`parse`] inverts this exactly.
    pub fn print(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra {} n={}", self.name, self.n);
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "meta {k} = {v}");
        }
        for eq in &self.equations {
            let _ = writeln!(out, "d a{} = {}", eq.index, print_sum(&eq.terms));
        }
        out
    }
}

fn print_factor(f: &CoframeFactor) -> String {
    if f.conjugated {
        format!("~a{}", f.index)
    } else {
        format!("a{}", f.index)
    }
}

fn print_monomial(m: &WrittenMonomial) -> String {
    format!("{}^{}", print_factor(&m.first), print_factor(&m.second))
}

fn print_sum(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, term) in terms.iter().enumerate() {
        let c = &term.coefficient;
        // Split into a sign and a magnitude rendering: ±1 prints as a bare
        // sign, other real coefficients move their sign out front, complex
        // literals keep any signs inside the parentheses.
        let (negative, magnitude) = if *c == GaussRational::one() {
            (false, String::new())
        } else if *c == GaussRational::one().neg() {
            (true, String::new())
        } else if c.im().is_zero() && c.re() < &Q::from_integer(BigInt::from(0)) {
            (true, format!("{} ", c.neg()))
        } else {
            (false, format!("{c} "))
        };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&magnitude);
        out.push_str(&print_monomial(&term.monomial));
    }
    out
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Scanner {
    line: usize,
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn new(line: usize, text: &str) -> Self {
        Scanner { line, chars: text.chars().collect(), pos: 0 }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column(), message: message.into() }
    }

    fn error_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column, message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn expect(&mut self, c: char, what: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    /// An identifier `[A-Za-z_][A-Za-z0-9_]*`.
    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let first = self.peek()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Some(s)
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if s.is_empty() {
            None
        } else {
            Some(s)
        }
    }

    fn rest(&self) -> String {
        self.chars[self.pos..].iter().collect::<String>().trim().to_string()
    }
}

fn parse_unsigned_rational(s: &mut Scanner) -> Result<Q, ParseError> {
    s.skip_ws();
    let numer = s.digits().ok_or_else(|| s.error("expected a number"))?;
    let numer: BigInt = numer.parse().expect("digits form an integer");
    if s.eat('/') {
        let denom_col = s.column();
        let denom = s.digits().ok_or_else(|| s.error("expected denominator digits"))?;
        let denom: BigInt = denom.parse().expect("digits form an integer");
        if denom == BigInt::from(0) {
            return Err(s.error_at(denom_col, "zero denominator".to_string()));
        }
        Ok(Q::new(numer, denom))
    } else {
        Ok(Q::from_integer(numer))
    }
}

fn parse_signed_rational(s: &mut Scanner) -> Result<Q, ParseError> {
    s.skip_ws();
    let negative = s.eat('-');
    let r = parse_unsigned_rational(s)?;
    Ok(if negative { -r } else { r })
}

/// A complex literal `(re+imi)` or `(re-imi)` in the scalar syntax.
fn parse_complex_literal(s: &mut Scanner) -> Result<GaussRational, ParseError> {
    s.expect('(', "`(` opening a complex literal")?;
    let re = parse_signed_rational(s)?;
    s.skip_ws();
    let im_negative = match s.bump() {
        Some('+') => false,
        Some('-') => true,
        _ => return Err(s.error("expected `+` or `-` inside a complex literal")),
    };
    let im = parse_unsigned_rational(s)?;
    s.expect('i', "`i` after the imaginary part")?;
    s.expect(')', "`)` closing the complex literal")?;
    Ok(GaussRational::new(re, if im_negative { -im } else { im }))
}

fn parse_factor(s: &mut Scanner, n: u8) -> Result<CoframeFactor, ParseError> {
    s.skip_ws();
    let conjugated = s.eat('~');
    s.skip_ws();
    if !s.eat('a') {
        return Err(s.error("expected a coframe factor like `a2` or `~a2`"));
    }
    let index_col = s.column();
    let digits = s.digits().ok_or_else(|| s.error("expected a coframe index"))?;
    let index: u32 = digits.parse().map_err(|_| s.error_at(index_col, "index too large"))?;
    if index == 0 || index > u32::from(n) {
        return Err(s.error_at(index_col, format!("coframe index {index} out of range 1..={n}")));
    }
    Ok(CoframeFactor { index: index as u8, conjugated })
}

fn parse_monomial(s: &mut Scanner, n: u8) -> Result<WrittenMonomial, ParseError> {
    let first = parse_factor(s, n)?;
    s.expect('^', "`^` between the two factors")?;
    let second_col = s.column();
    let second = parse_factor(s, n)?;
    if first.conjugated && !second.conjugated {
        return Err(s.error_at(
            second_col,
            "holomorphic factor after a conjugated one; write the monomial as a<j>^~a<k>",
        ));
    }
    Ok(WrittenMonomial { first, second })
}

fn parse_sum(s: &mut Scanner, n: u8) -> Result<Vec<Term>, ParseError> {
    s.skip_ws();
    if s.eat('0') {
        if !s.at_end() {
            return Err(s.error("unexpected input after `0`"));
        }
        return Ok(Vec::new());
    }
    if s.at_end() {
        return Err(s.error("expected a sum of monomials or `0`"));
    }
    let mut terms = Vec::new();
    let mut negative = if s.eat('-') {
        true
    } else {
        let _ = s.eat('+');
        false
    };
    loop {
        s.skip_ws();
        let coefficient = match s.peek() {
            Some('(') => parse_complex_literal(s)?,
            Some(c) if c.is_ascii_digit() => {
                GaussRational::from_rational(parse_unsigned_rational(s)?)
            }
            _ => GaussRational::one(),
        };
        let monomial = parse_monomial(s, n)?;
        let coefficient = if negative { coefficient.neg() } else { coefficient };
        terms.push(Term { coefficient, monomial });
        if s.at_end() {
            return Ok(terms);
        }
        negative = if s.eat('+') {
            false
        } else if s.eat('-') {
            true
        } else {
            return Err(s.error("expected `+` or `-` between terms"));
        };
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

/// Parse an algebra file.  Total: every failure is a positioned
/// [`ParseError`].
pub fn parse(text: &str) -> Result<AlgebraFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty());

    let Some((header_no, header)) = lines.next() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "expected an `algebra <name> n=<dim>` header".to_string(),
        });
    };
    let mut s = Scanner::new(header_no, header);
    match s.ident() {
        Some(kw) if kw == "algebra" => {}
        _ => return Err(s.error("expected an `algebra <name> n=<dim>` header")),
    }
    s.skip_ws();
    let mut name = String::new();
    while let Some(c) = s.peek() {
        if c.is_whitespace() || c == '=' {
            break;
        }
        name.push(c);
        s.pos += 1;
    }
    if name.is_empty() {
        return Err(s.error("expected an algebra name"));
    }
    match s.ident() {
        Some(kw) if kw == "n" => {}
        _ => return Err(s.error("expected `n=<dim>` after the name")),
    }
    s.expect('=', "`=` after `n`")?;
    s.skip_ws();
    let dim_col = s.column();
    let dim = s.digits().ok_or_else(|| s.error("expected the dimension"))?;
    let n: u8 = dim
        .parse()
        .ok()
        .filter(|d| (1..=crate::exterior::MAX_DIM).contains(d))
        .ok_or_else(|| {
            s.error_at(dim_col, format!("dimension must be in 1..={}", crate::exterior::MAX_DIM))
        })?;
    if !s.at_end() {
        return Err(s.error("unexpected input after the header"));
    }

    let mut equations: Vec<Equation> = Vec::new();
    let mut metadata: Vec<(String, String)> = Vec::new();
    // Line numbers of `meta analytic` tags, re-checked once equations are in.
    let mut analytic_tags: Vec<(usize, String)> = Vec::new();

    for (line_no, line) in lines {
        let mut s = Scanner::new(line_no, line);
        s.skip_ws();
        let keyword_col = s.column();
        match s.ident().as_deref() {
            Some("d") => {
                s.skip_ws();
                if !s.eat('a') {
                    return Err(s.error("expected `a<index>` after `d`"));
                }
                let index_col = s.column();
                let digits = s.digits().ok_or_else(|| s.error("expected a coframe index"))?;
                let index: u32 =
                    digits.parse().map_err(|_| s.error_at(index_col, "index too large"))?;
                if index == 0 || index > u32::from(n) {
                    return Err(
                        s.error_at(index_col, format!("coframe index {index} out of range 1..={n}"))
                    );
                }
                let index = index as u8;
                if equations.iter().any(|eq| eq.index == index) {
                    return Err(s.error_at(index_col, format!("duplicate definition of d a{index}")));
                }
                s.expect('=', "`=` after the left-hand side")?;
                let terms = parse_sum(&mut s, n)?;
                equations.push(Equation { index, terms });
            }
            Some("meta") => {
                let Some(key) = s.ident() else {
                    return Err(s.error("expected a metadata key"));
                };
                s.expect('=', "`=` after the metadata key")?;
                s.skip_ws();
                let value = s.rest();
                if key == "analytic" {
                    analytic_tags.push((line_no, value.clone()));
                }
                metadata.push((key, value));
            }
            _ => {
                return Err(s.error_at(
                    keyword_col,
                    "expected a `d a<j> = …` equation or a `meta <key> = <value>` tag",
                ))
            }
        }
    }

    for (line_no, value) in analytic_tags {
        let at = |message: String| ParseError { line: line_no, column: 1, message };
        let k: u8 = value
            .trim()
            .parse()
            .ok()
            .filter(|k| (1..=n).contains(k))
            .ok_or_else(|| at(format!("`analytic` must name a coframe index in 1..={n}")))?;
        let closed = equations
            .iter()
            .find(|eq| eq.index == k)
            .map_or(true, |eq| eq.form(n).is_zero());
        if !closed {
            return Err(at(format!(
                "the analytic direction a{k} must have a zero differential"
            )));
        }
    }

    Ok(AlgebraFile { name, n, equations, metadata })
}
