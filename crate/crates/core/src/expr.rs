//! Constructor expressions such as `uniform(2,4)`, `graphic(3; 0-1, 1-2)`,
//! `dsum(uniform(1,2), uniform(1,3))` and `dual(uniform(1,3))`.

use crate::error::{Error, Result};
use crate::matroid::Matroid;

pub fn parse_expr(text: &str) -> Result<Matroid> {
    let mut parser = Parser { text, pos: 0 };
    let m = parser.expr()?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(m)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in '{}'", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn expect(&mut self, token: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn eat(&mut self, token: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a constructor name"));
        }
        self.pos += len;
        Ok(&self.text[start..start + len])
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.rest().starts_with('-') {
            self.pos += 1;
        }
        let digits = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if digits == 0 {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        self.pos += digits;
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error("number out of range"))
    }

    fn index(&mut self) -> Result<usize> {
        let v = self.number()?;
        usize::try_from(v).map_err(|_| self.error("expected a non-negative number"))
    }

    fn expr(&mut self) -> Result<Matroid> {
        let name = self.ident()?.to_ascii_lowercase();
        self.expect('(')?;
        let m = match name.as_str() {
            "uniform" => {
                let r = self.number()?;
                self.expect(',')?;
                let n = self.index()?;
                Matroid::uniform(r, n)?
            }
            "graphic" => {
                let vertices = self.index()?;
                let mut edges = Vec::new();
                if self.eat(';') {
                    loop {
                        let u = self.index()?;
                        self.expect('-')?;
                        let w = self.index()?;
                        edges.push((u, w));
                        if !self.eat(',') {
                            break;
                        }
                    }
                }
                Matroid::graphic(vertices, &edges)?
            }
            "dsum" => {
                let mut m = self.expr()?;
                while self.eat(',') {
                    m = m.direct_sum(&self.expr()?);
                }
                m
            }
            "dual" => self.expr()?.dual(),
            other => return Err(self.error(&format!("unknown constructor '{other}'"))),
        };
        self.expect(')')?;
        Ok(m)
    }
}
