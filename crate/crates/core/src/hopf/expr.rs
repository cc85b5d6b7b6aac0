//! Word-level expressions over named symbols, and a small parser for them.
//!
//! Grammar (`⊗` binds looser than `*`, tighter than `+`):
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := ['-'] product ['⊗' product]
//! product := factor (('*' | '/')? factor)*
//! factor  := atom ['^' ['-'] int]
//! atom    := int | ident | '(' sum ')'
//! ```
//!
//! Identifiers resolve to scalar variables first, then to symbols of the
//! algebra; `z` is the primitive root `ζ_M` unless shadowed. Division is only
//! allowed by scalars.

use crate::cyclotomic::CycloNum;

use super::HopfError;

/// A word: symbol indices with integer exponents, read left to right.
pub type Word = Vec<(usize, i64)>;

/// Linear combination of words (not normalized).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expr {
    pub terms: Vec<(CycloNum, Word)>,
}

/// Linear combination of pairs of words.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TensorExpr {
    pub terms: Vec<(CycloNum, Word, Word)>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr { terms: Vec::new() }
    }

    pub fn scalar(c: CycloNum) -> Self {
        Expr { terms: vec![(c, Vec::new())] }
    }

    pub fn word(c: CycloNum, w: Word) -> Self {
        Expr { terms: vec![(c, w)] }
    }

    pub fn plus(mut self, c: CycloNum, w: Word) -> Self {
        self.terms.push((c, w));
        self
    }

    fn as_scalar(&self, conductor: u32) -> Option<CycloNum> {
        let mut acc = CycloNum::zero(conductor);
        for (c, w) in &self.terms {
            if !w.is_empty() {
                return None;
            }
            acc += c;
        }
        Some(acc)
    }

    fn mul(&self, other: &Expr) -> Expr {
        let mut terms = Vec::new();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                terms.push((c1 * c2, w));
            }
        }
        Expr { terms }
    }

    fn scale(&self, f: &CycloNum) -> Expr {
        Expr { terms: self.terms.iter().map(|(c, w)| (c * f, w.clone())).collect() }
    }
}

impl TensorExpr {
    pub fn zero() -> Self {
        TensorExpr { terms: Vec::new() }
    }

    pub fn plus(mut self, c: CycloNum, l: Word, r: Word) -> Self {
        self.terms.push((c, l, r));
        self
    }

    /// Exchanges the two tensor legs.
    pub fn flip(&self) -> TensorExpr {
        TensorExpr { terms: self.terms.iter().map(|(c, l, r)| (c.clone(), r.clone(), l.clone())).collect() }
    }
}

/// Names available to the parser.
pub struct Scope<'a> {
    pub conductor: u32,
    pub symbols: &'a [String],
    pub vars: &'a [(&'a str, CycloNum)],
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, HopfError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = chars[start..i].iter().collect();
            out.push(Tok::Int(t.parse().map_err(|_| HopfError::Parse(format!("integer too large: {t}")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()⊗".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(HopfError::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, 'b> {
    toks: Vec<Tok>,
    pos: usize,
    scope: &'b Scope<'a>,
    src: String,
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> HopfError {
        HopfError::Parse(format!("{msg} in {:?}", self.src))
    }

    fn sum(&mut self) -> Result<TensorExpr, HopfError> {
        let mut acc = TensorExpr::zero();
        let mut sign = if self.eat('-') { -1 } else { self.eat('+'); 1 };
        loop {
            let t = self.term()?;
            let f = CycloNum::from_int(self.scope.conductor, sign);
            for (c, l, r) in t.terms {
                acc.terms.push((&c * &f, l, r));
            }
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TensorExpr, HopfError> {
        let left = self.product()?;
        if self.eat('⊗') {
            let right = self.product()?;
            let mut out = TensorExpr::zero();
            for (c1, w1) in &left.terms {
                for (c2, w2) in &right.terms {
                    out.terms.push((c1 * c2, w1.clone(), w2.clone()));
                }
            }
            Ok(out)
        } else {
            Ok(TensorExpr { terms: left.terms.into_iter().map(|(c, w)| (c, w, Vec::new())).collect() })
        }
    }

    fn product(&mut self) -> Result<Expr, HopfError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    let s = f.as_scalar(self.scope.conductor).ok_or_else(|| self.err("division by a non-scalar"))?;
                    let inv = s.inverse().map_err(|_| self.err("division by zero"))?;
                    acc = acc.scale(&inv);
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, HopfError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Int(v)) => *v,
            _ => return Err(self.err("expected integer exponent")),
        };
        self.pos += 1;
        let e = if neg { -e } else { e };
        let m = self.scope.conductor;
        if let Some(s) = base.as_scalar(m) {
            return Ok(Expr::scalar(s.pow(e).map_err(|_| self.err("zero to a negative power"))?));
        }
        if base.terms.len() == 1 && base.terms[0].0.is_one() && base.terms[0].1.len() == 1 {
            let (sym, k) = base.terms[0].1[0];
            return Ok(Expr::word(CycloNum::one(m), vec![(sym, k * e)]));
        }
        if e < 0 {
            return Err(self.err("negative power of a compound expression"));
        }
        let mut acc = Expr::scalar(CycloNum::one(m));
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, HopfError> {
        let m = self.scope.conductor;
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::scalar(CycloNum::from_int(m, v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some((_, v)) = self.scope.vars.iter().find(|(n, _)| *n == name) {
                    return Ok(Expr::scalar(v.clone()));
                }
                if let Some(i) = self.scope.symbols.iter().position(|s| *s == name) {
                    return Ok(Expr::word(CycloNum::one(m), vec![(i, 1)]));
                }
                if name == "z" {
                    return Ok(Expr::scalar(CycloNum::root_of_unity(m, 1)));
                }
                Err(self.err(&format!("unknown name {name:?}")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                if inner.terms.iter().any(|(_, _, r)| !r.is_empty()) {
                    return Err(self.err("tensor inside parentheses"));
                }
                Ok(Expr { terms: inner.terms.into_iter().map(|(c, l, _)| (c, l)).collect() })
            }
            _ => Err(self.err("unexpected end of expression")),
        }
    }
}

fn parse_tensor_any(s: &str, scope: &Scope) -> Result<(TensorExpr, bool), HopfError> {
    let toks = tokenize(s)?;
    let has_tensor = toks.contains(&Tok::Op('⊗'));
    let mut p = Parser { toks, pos: 0, scope, src: s.to_string() };
    let t = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok((t, has_tensor))
}

/// Parses an element-level expression.
pub fn parse_expr(s: &str, scope: &Scope) -> Result<Expr, HopfError> {
    let (t, has_tensor) = parse_tensor_any(s, scope)?;
    if has_tensor {
        return Err(HopfError::Parse(format!("unexpected ⊗ in {s:?}")));
    }
    Ok(Expr { terms: t.terms.into_iter().map(|(c, l, _)| (c, l)).collect() })
}

/// Parses a tensor expression; every term must contain `⊗`.
pub fn parse_tensor(s: &str, scope: &Scope) -> Result<TensorExpr, HopfError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, scope, src: s.to_string() };
    let mut acc = TensorExpr::zero();
    let mut sign = if p.eat('-') { -1 } else { p.eat('+'); 1 };
    loop {
        let left = p.product()?;
        if !p.eat('⊗') {
            return Err(p.err("each term of a tensor needs ⊗"));
        }
        let right = p.product()?;
        let f = CycloNum::from_int(scope.conductor, sign);
        for (c1, w1) in &left.terms {
            for (c2, w2) in &right.terms {
                acc.terms.push((&(c1 * c2) * &f, w1.clone(), w2.clone()));
            }
        }
        if p.eat('+') {
            sign = 1;
        } else if p.eat('-') {
            sign = -1;
        } else {
            break;
        }
    }
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_words_and_scalars() {
        let syms = vec!["x".to_string(), "g".to_string()];
        let q = CycloNum::root_of_unity(3, 1);
        let vars = [("q", q.clone())];
        let scope = Scope { conductor: 3, symbols: &syms, vars: &vars };
        let e = parse_expr("-q^-1*x g^-1", &scope).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].0, -q.pow(-1).unwrap());
        assert_eq!(e.terms[0].1, vec![(0, 1), (1, -1)]);
        let e = parse_expr("(g - g^2)/(q - 1)", &scope).unwrap();
        assert_eq!(e.terms.len(), 2);
        let t = parse_tensor("g ⊗ x + x ⊗ 1", &scope).unwrap();
        assert_eq!(t.terms.len(), 2);
        assert_eq!(t.terms[1].2, Vec::<(usize, i64)>::new());
        assert!(parse_expr("x ⊗ g", &scope).is_err());
        assert!(parse_expr("x / g", &scope).is_err());
        assert!(parse_expr("w", &scope).is_err());
        assert!(parse_tensor("x + g ⊗ 1", &scope).is_err());
    }
}
