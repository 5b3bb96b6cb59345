//! Recursive-descent parser for group expressions.

use super::field::prime_power;
use super::{GroupExpr, Sign};
use crate::error::{ParseError, ParseErrorKind};
use crate::group::is_prime;
use crate::perm::{parse_cycles, Permutation};

/// Largest permutation degree accepted by `perm[...]` and `sd[...]`.
pub const MAX_DEGREE: u64 = 1 << 16;

const CTORS: &[&str] = &["C", "E", "D", "Q", "SD", "M", "X", "S", "A", "PSL", "SL"];

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

fn out_of_range(offset: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        kind: ParseErrorKind::ParameterOutOfRange(msg.into()),
        offset,
        expected: Vec::new(),
    }
}

impl<'a> Parser<'a> {
    fn bytes(&self) -> &'a [u8] {
        self.text.as_bytes()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let tok = (c as char).to_string();
            Err(ParseError::syntax(self.pos, &[tok.as_str()]))
        }
    }

    fn ident(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        (start, &self.text[start..self.pos])
    }

    fn number(&mut self) -> PResult<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::syntax(start, &["integer"]));
        }
        let n = self.text[start..self.pos]
            .parse()
            .map_err(|_| out_of_range(start, "integer too large"))?;
        Ok((start, n))
    }

    fn expr(&mut self) -> PResult<GroupExpr> {
        let mut left = self.term()?;
        while self.peek() == Some(b'x') {
            self.pos += 1;
            let right = self.term()?;
            left = GroupExpr::DirectProduct(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn term(&mut self) -> PResult<GroupExpr> {
        let (start, word) = self.ident();
        match word {
            "" => {
                let mut expected: Vec<&str> = CTORS.to_vec();
                expected.extend(["perm", "sd"]);
                Err(ParseError::syntax(start, &expected))
            }
            "perm" => {
                self.expect(b'[')?;
                let degree = self.degree()?;
                self.expect(b':')?;
                let gens = self.perm_list(degree)?;
                self.expect(b']')?;
                Ok(GroupExpr::Perm { degree, gens })
            }
            "sd" => {
                self.expect(b'[')?;
                let degree = self.degree()?;
                self.expect(b':')?;
                let gens = self.perm_list(degree)?;
                self.expect(b';')?;
                let normal = self.perm_list(degree)?;
                self.expect(b';')?;
                let complement = self.perm_list(degree)?;
                self.expect(b']')?;
                Ok(GroupExpr::SemidirectByPerms {
                    degree,
                    gens,
                    normal,
                    complement,
                })
            }
            ctor if CTORS.contains(&ctor) => {
                self.expect(b'(')?;
                let e = self.ctor_params(ctor)?;
                self.expect(b')')?;
                Ok(e)
            }
            other => Err(ParseError {
                kind: ParseErrorKind::UnknownConstructor(other.to_string()),
                offset: start,
                expected: CTORS.iter().map(|s| s.to_string()).collect(),
            }),
        }
    }

    fn degree(&mut self) -> PResult<usize> {
        let (at, d) = self.number()?;
        if d == 0 || d > MAX_DEGREE {
            return Err(out_of_range(at, format!("degree must lie in 1..={MAX_DEGREE}")));
        }
        Ok(d as usize)
    }

    fn perm_list(&mut self, degree: usize) -> PResult<Vec<Permutation>> {
        let mut gens = vec![self.perm(degree)?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            gens.push(self.perm(degree)?);
        }
        Ok(gens)
    }

    fn perm(&mut self, degree: usize) -> PResult<Permutation> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() != Some(b'(') {
            return Err(ParseError::syntax(self.pos, &["("]));
        }
        let mut depth = 0usize;
        while self.pos < self.text.len() {
            match self.bytes()[self.pos] {
                b'(' => depth += 1,
                b')' => depth = depth.saturating_sub(1),
                b',' | b';' | b']' if depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        let slice = &self.text[start..self.pos];
        let cycles = parse_cycles(slice)
            .map_err(|(off, _)| ParseError::syntax(start + off, &["(", ")", "point"]))?;
        Permutation::from_cycles(degree, &cycles).map_err(|e| out_of_range(start, e.to_string()))
    }

    fn comma(&mut self) -> PResult<()> {
        self.expect(b',')
    }

    fn prime(&mut self) -> PResult<u64> {
        let (at, p) = self.number()?;
        if !is_prime(p) {
            return Err(out_of_range(at, format!("{p} is not prime")));
        }
        Ok(p)
    }

    fn positive(&mut self) -> PResult<u64> {
        let (at, n) = self.number()?;
        if n == 0 {
            return Err(out_of_range(at, "parameter must be positive"));
        }
        Ok(n)
    }

    fn two_power(&mut self, min: u64) -> PResult<u64> {
        let (at, n) = self.number()?;
        if !n.is_power_of_two() || n < min {
            return Err(out_of_range(at, format!("expected a power of 2 at least {min}")));
        }
        Ok(n)
    }

    fn ctor_params(&mut self, ctor: &str) -> PResult<GroupExpr> {
        Ok(match ctor {
            "C" => GroupExpr::Cyclic(self.positive()?),
            "D" => GroupExpr::Dihedral(self.positive()?),
            "S" => GroupExpr::Sym(self.positive()?),
            "A" => GroupExpr::Alt(self.positive()?),
            "Q" => GroupExpr::GenQuaternion(self.two_power(8)?),
            "SD" => GroupExpr::SemiDihedral(self.two_power(16)?),
            "E" => {
                let p = self.prime()?;
                self.comma()?;
                let (at, k) = self.number()?;
                if k == 0 || k > 64 {
                    return Err(out_of_range(at, "rank must lie in 1..=64"));
                }
                GroupExpr::ElemAbelian { p, k: k as u32 }
            }
            "M" => {
                let p = self.prime()?;
                self.comma()?;
                let (at, n) = self.number()?;
                let min = if p == 2 { 4 } else { 3 };
                if n < min || n > 64 {
                    return Err(out_of_range(at, format!("M({p},n) needs {min} ≤ n ≤ 64")));
                }
                GroupExpr::ModularMaxCyclic { p, n: n as u32 }
            }
            "X" => {
                let p = self.prime()?;
                self.comma()?;
                let sign = match self.peek() {
                    Some(b'+') => Sign::Plus,
                    Some(b'-') => Sign::Minus,
                    _ => return Err(ParseError::syntax(self.pos, &["+", "-"])),
                };
                self.pos += 1;
                GroupExpr::Extraspecial { p, sign }
            }
            "PSL" | "SL" => {
                let (at, two) = self.number()?;
                if two != 2 {
                    return Err(out_of_range(at, "only dimension 2 is supported"));
                }
                self.comma()?;
                let (at, q) = self.number()?;
                if ctor == "PSL" {
                    if prime_power(q).is_none() {
                        return Err(out_of_range(at, format!("{q} is not a prime power")));
                    }
                    GroupExpr::Psl2(q)
                } else {
                    if !is_prime(q) {
                        return Err(out_of_range(at, format!("{q} is not prime")));
                    }
                    GroupExpr::Sl2(q)
                }
            }
            _ => unreachable!("constructor list is closed"),
        })
    }
}

/// Parses a group expression such as `Q(8) x C(2)` or `perm[3: (1 2 3), (1 2)]`.
pub fn parse_group_expr(text: &str) -> Result<GroupExpr, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    let e = parser.expr()?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(ParseError::syntax(parser.pos, &["x", "end of input"]));
    }
    Ok(e)
}
