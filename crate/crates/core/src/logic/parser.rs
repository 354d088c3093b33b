//! Recursive-descent parser for the ASCII formula language.
//!
//! ```text
//! sentence := soq* fo
//! soq      := ("exists2" | "forall2") NAME "/" NAT
//! fo       := ("forall" | "exists") VAR fo | iff
//! iff      := imp ("<->" imp)*
//! imp      := xr ("->" imp)?
//! xr       := or ("(+)" or)*
//! or       := and ("|" and)*
//! and      := un ("&" un)*
//! un       := "!" un | "(" fo ")" | "true" | "false" | atom
//! atom     := NAME "(" term ("," term)* ")" | term ("=" | "!=" | "<=") term
//! term     := VAR | CONST | "0" | "1" | "max" | NAT
//! ```
//!
//! A quantifier may also open any `un` position; its scope extends as far right
//! as possible.

use super::formula::{Formula, Quantifier, Term};
use crate::error::{Error, Result};
use crate::structure::{NumericRelation, Vocabulary};
use crate::text::lexer::{Cursor, Tok};

pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let mut cur = Cursor::new(text)?;
    let f = parse_formula_from(&mut cur, vocab)?;
    if !cur.at_eof() {
        return Err(cur.unexpected("end of formula"));
    }
    Ok(f)
}

/// Parses one formula from a shared cursor, stopping at the first token that
/// cannot continue it (used by the document formats).
pub(crate) fn parse_formula_from(cur: &mut Cursor, vocab: &Vocabulary) -> Result<Formula> {
    let mut p = FormulaParser { cur, vocab, so_scope: Vec::new(), fo_scope: Vec::new() };
    p.fo()
}

struct FormulaParser<'a> {
    cur: &'a mut Cursor,
    vocab: &'a Vocabulary,
    so_scope: Vec<(String, usize)>,
    fo_scope: Vec<String>,
}

impl FormulaParser<'_> {
    fn keyword(&self) -> Option<&str> {
        match self.cur.peek() {
            Tok::Ident(s) => Some(s.as_str()),
            _ => None,
        }
    }

    fn fo(&mut self) -> Result<Formula> {
        match self.keyword() {
            Some("exists") | Some("forall") => {
                let q = if self.keyword() == Some("exists") { Quantifier::Exists } else { Quantifier::Forall };
                self.cur.bump();
                let var = self.cur.ident()?;
                self.fo_scope.push(var.clone());
                let body = self.fo();
                self.fo_scope.pop();
                Ok(Formula::Quant { q, var, body: Box::new(body?) })
            }
            Some("exists2") | Some("forall2") => {
                let q = if self.keyword() == Some("exists2") { Quantifier::Exists } else { Quantifier::Forall };
                self.cur.bump();
                let name = self.cur.ident()?;
                if self.vocab.relation_index(&name).is_some() || NumericRelation::from_name(&name).is_some() {
                    return Err(self.cur.error(format!("relation variable `{name}` shadows a relation symbol")));
                }
                self.cur.expect(&Tok::Slash)?;
                let arity = self.cur.nat()?;
                if arity == 0 {
                    return Err(self.cur.error("relation variable arity must be positive"));
                }
                self.so_scope.push((name.clone(), arity));
                let body = self.fo();
                self.so_scope.pop();
                Ok(Formula::SoQuant { q, name, arity, body: Box::new(body?) })
            }
            _ => self.iff(),
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.imp()?;
        while self.cur.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.xr()?;
        if self.cur.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn xr(&mut self) -> Result<Formula> {
        let mut lhs = self.or()?;
        while self.cur.eat(&Tok::Xor) {
            let rhs = self.or()?;
            lhs = Formula::xor(lhs, rhs);
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut parts = vec![self.and()?];
        while self.cur.eat(&Tok::Pipe) {
            parts.push(self.and()?);
        }
        Ok(Formula::or(parts))
    }

    fn and(&mut self) -> Result<Formula> {
        let mut parts = vec![self.un()?];
        while self.cur.eat(&Tok::Amp) {
            parts.push(self.un()?);
        }
        Ok(Formula::and(parts))
    }

    fn un(&mut self) -> Result<Formula> {
        if self.cur.eat(&Tok::Bang) {
            return Ok(Formula::not(self.un()?));
        }
        if self.cur.eat(&Tok::LParen) {
            let inner = self.fo()?;
            self.cur.expect(&Tok::RParen)?;
            return Ok(inner);
        }
        match self.keyword() {
            Some("exists" | "forall" | "exists2" | "forall2") => self.fo(),
            Some("true") => {
                self.cur.bump();
                Ok(Formula::True)
            }
            Some("false") => {
                self.cur.bump();
                Ok(Formula::False)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        if let (Tok::Ident(name), Tok::LParen) = (self.cur.peek().clone(), self.cur.peek_at(1).clone()) {
            let here = self.cur.here().clone();
            self.cur.bump();
            self.cur.bump();
            let mut args = vec![self.term()?];
            while self.cur.eat(&Tok::Comma) {
                args.push(self.term()?);
            }
            self.cur.expect(&Tok::RParen)?;
            let check = |expected: usize| -> Result<()> {
                if expected != args.len() {
                    Err(Error::ArityMismatch { symbol: name.clone(), expected, found: args.len() })
                } else {
                    Ok(())
                }
            };
            if let Some((_, arity)) = self.so_scope.iter().rev().find(|(n, _)| *n == name) {
                check(*arity)?;
                return Ok(Formula::SoVar { name, args });
            }
            if let Some(rel) = NumericRelation::from_name(&name) {
                check(rel.arity())?;
                return Ok(Formula::Num { rel, args });
            }
            if let Some(arity) = self.vocab.arity(&name) {
                check(arity)?;
                return Ok(Formula::Rel { name, args });
            }
            let _ = here;
            return Err(Error::UnknownSymbol(name));
        }
        let lhs = self.term()?;
        let op = self.cur.bump();
        let rhs = match op {
            Tok::Eq | Tok::Neq | Tok::Le => self.term()?,
            other => {
                return Err(self.cur.error(format!("expected `=`, `!=` or `<=`, found {}", other.describe())))
            }
        };
        Ok(match op {
            Tok::Eq => Formula::Eq(lhs, rhs),
            Tok::Neq => Formula::not(Formula::Eq(lhs, rhs)),
            _ => Formula::Num { rel: NumericRelation::Le, args: vec![lhs, rhs] },
        })
    }

    fn term(&mut self) -> Result<Term> {
        match self.cur.peek().clone() {
            Tok::Nat(n) => {
                self.cur.bump();
                Ok(Term::Num(n))
            }
            Tok::Ident(s) if s == "max" => {
                self.cur.bump();
                Ok(Term::Max)
            }
            Tok::Ident(s) => {
                if ["exists", "forall", "exists2", "forall2", "true", "false"].contains(&s.as_str()) {
                    return Err(self.cur.unexpected("term"));
                }
                self.cur.bump();
                if !self.fo_scope.contains(&s) && self.vocab.constant_index(&s).is_some() {
                    Ok(Term::Const(s))
                } else {
                    Ok(Term::Var(s))
                }
            }
            _ => Err(self.cur.unexpected("term")),
        }
    }
}
