//! Parser for the canonical symbol grammar.
//!
//! ```text
//! product := term ('*' term)*
//! term    := atom ('^' uint)?
//! atom    := 'Xi' | 'Psi' | '1' | 'X' '^' '(' uint,uint,uint,uint ')'
//!          | 'X' '_' digit | 'I' '(' product ')' | 'E' ('^' uint)? '(' product ')'
//! ```
//!
//! `Psi` is accepted as input shorthand for `I(Xi)`.

use super::Symbol;
use crate::error::TreeError;

pub fn parse_symbol(input: &str) -> Result<Symbol, TreeError> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0 };
    let sym = p.product()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(sym)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> TreeError {
        TreeError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<(), TreeError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u32, TreeError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn product(&mut self) -> Result<Symbol, TreeError> {
        let mut factors = vec![self.term()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.term()?);
        }
        Ok(Symbol::product(factors))
    }

    fn term(&mut self) -> Result<Symbol, TreeError> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.uint()?;
            Ok(Symbol::product(vec![atom; n as usize]))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Symbol, TreeError> {
        self.skip_ws();
        if self.eat_keyword("Xi") {
            return Ok(Symbol::xi());
        }
        if self.eat_keyword("Psi") {
            return Ok(Symbol::psi());
        }
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(Symbol::one())
            }
            Some(b'X') => {
                self.pos += 1;
                match self.peek() {
                    Some(b'^') => {
                        self.pos += 1;
                        self.eat(b'(')?;
                        let mut k = [0u32; 4];
                        for (i, slot) in k.iter_mut().enumerate() {
                            if i > 0 {
                                self.eat(b',')?;
                            }
                            *slot = self.uint()?;
                        }
                        self.eat(b')')?;
                        Ok(Symbol::mono(k))
                    }
                    Some(b'_') => {
                        self.pos += 1;
                        let i = self.uint()? as usize;
                        if i > 3 {
                            return Err(self.err("X index must be 0..3"));
                        }
                        Ok(Symbol::x(i))
                    }
                    _ => Err(self.err("expected '^(' or '_' after X")),
                }
            }
            Some(b'I') => {
                self.pos += 1;
                self.eat(b'(')?;
                let inner = self.product()?;
                self.eat(b')')?;
                Ok(Symbol::integ(inner))
            }
            Some(b'E') => {
                self.pos += 1;
                let k = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.uint()?
                } else {
                    1
                };
                self.eat(b'(')?;
                let inner = self.product()?;
                self.eat(b')')?;
                Ok(Symbol::eps(k, inner))
            }
            _ => Err(self.err("expected a symbol atom")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_symbol("Xi").unwrap(), Symbol::xi());
        assert_eq!(parse_symbol("E(Psi^5)").unwrap(), Symbol::eps(1, Symbol::psi_pow(5)));
        assert_eq!(
            parse_symbol("Psi^2*I(Psi^2)").unwrap(),
            Symbol::product(vec![Symbol::psi_pow(2), Symbol::integ(Symbol::psi_pow(2))])
        );
        assert_eq!(parse_symbol("X^(0,1,0,0)").unwrap(), Symbol::x(1));
        assert_eq!(parse_symbol("X_2").unwrap(), Symbol::x(2));
        assert_eq!(
            parse_symbol("E^2(I(Xi)^4 * I(E(I(Xi)^5)))").unwrap(),
            Symbol::eps(
                2,
                Symbol::product(vec![
                    Symbol::psi_pow(4),
                    Symbol::integ(Symbol::eps(1, Symbol::psi_pow(5)))
                ])
            )
        );
    }

    #[test]
    fn display_parse_roundtrip() {
        let syms = vec![
            Symbol::xi(),
            Symbol::one(),
            Symbol::psi_pow(3),
            Symbol::eps(2, Symbol::psi_pow(5)),
            Symbol::product(vec![
                Symbol::x(1),
                Symbol::psi_pow(2),
                Symbol::integ(Symbol::psi_pow(3)),
            ]),
        ];
        for s in syms {
            assert_eq!(parse_symbol(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_symbol("").is_err());
        assert!(parse_symbol("Q").is_err());
        assert!(parse_symbol("I(Xi").is_err());
        assert!(parse_symbol("Xi extra").is_err());
    }
}
