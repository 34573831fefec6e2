//! The group description language.
//!
//! ```text
//! spec := atom ("x" atom)*
//! atom := "C(" n ")" | "D(" n ")" | "S(" n ")" | "A(" n ")" | "Dic(" n ")"
//!       | "Heis(" p ")" | "PSL(2," q ")"
//!       | "SD(" p^k ";" factors ";" matrix ")" | "file:" path
//! ```
//!
//! `x` is a left-associative direct product. A `file:` path runs to the next
//! whitespace.

use std::fmt;
use std::path::PathBuf;

use selfnorm::arith::{is_prime, prime_power};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
    Dicyclic,
    Heisenberg,
    Psl2,
}

impl Family {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "C" => Family::Cyclic,
            "D" => Family::Dihedral,
            "S" => Family::Symmetric,
            "A" => Family::Alternating,
            "Dic" => Family::Dicyclic,
            "Heis" => Family::Heisenberg,
            "PSL" => Family::Psl2,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "C",
            Family::Dihedral => "D",
            Family::Symmetric => "S",
            Family::Alternating => "A",
            Family::Dicyclic => "Dic",
            Family::Heisenberg => "Heis",
            Family::Psl2 => "PSL",
        }
    }

    fn validate(self, n: u64) -> Result<(), String> {
        let ok = match self {
            Family::Cyclic | Family::Symmetric => n >= 1,
            Family::Dihedral | Family::Alternating => n >= 3,
            Family::Dicyclic => n >= 2,
            Family::Heisenberg => n != 2 && is_prime(n),
            Family::Psl2 => prime_power(n).is_some() && n <= 64,
        };
        if ok {
            return Ok(());
        }
        Err(match self {
            Family::Cyclic | Family::Symmetric => format!("{}(n) needs n >= 1", self.name()),
            Family::Dihedral | Family::Alternating => format!("{}(n) needs n >= 3", self.name()),
            Family::Dicyclic => "Dic(n) needs n >= 2".into(),
            Family::Heisenberg => format!("Heis(p) needs an odd prime, got {n}"),
            Family::Psl2 => format!("PSL(2,q) needs a prime power q <= 64, got {n}"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Family(Family, u64),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        actor_order: u64,
        carrier: Vec<u64>,
        matrix: Vec<Vec<i64>>,
    },
    /// Generators file or Cayley table; the header line decides which.
    FromFile(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Family(Family::Psl2, q) => write!(f, "PSL(2,{q})"),
            GroupSpec::Family(fam, n) => write!(f, "{}({n})", fam.name()),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::Semidirect {
                actor_order,
                carrier,
                matrix,
            } => {
                let factors: Vec<String> = carrier.iter().map(u64::to_string).collect();
                let rows: Vec<String> = matrix
                    .iter()
                    .map(|r| {
                        let r: Vec<String> = r.iter().map(i64::to_string).collect();
                        format!("[{}]", r.join(","))
                    })
                    .collect();
                write!(
                    f,
                    "SD({actor_order};{};[{}])",
                    factors.join(","),
                    rows.join(",")
                )
            }
            GroupSpec::FromFile(p) => write!(f, "file:{}", p.display()),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> CliError {
        CliError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            // a lone 'x' is the product operator
            if !c.is_ascii_alphabetic() || (c == 'x' && self.pos == start) {
                break;
            }
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<i64, CliError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        text.parse().map_err(|_| CliError::Syntax {
            pos: start,
            msg: "expected an integer".into(),
        })
    }

    fn natural(&mut self) -> Result<u64, CliError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.integer()?;
        u64::try_from(v).map_err(|_| CliError::Syntax {
            pos: start,
            msg: "expected a non-negative integer".into(),
        })
    }

    fn spec(&mut self) -> Result<GroupSpec, CliError> {
        let mut left = self.atom()?;
        while self.eat('x') {
            let right = self.atom()?;
            left = GroupSpec::Product(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<GroupSpec, CliError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident();
        if name.is_empty() {
            return Err(self.err("expected a group"));
        }
        if name == "file" {
            self.expect(':')?;
            let from = self.pos;
            while self.peek().is_some_and(|c| !c.is_whitespace()) {
                self.pos += self.peek().map_or(1, char::len_utf8);
            }
            if from == self.pos {
                return Err(self.err("expected a path"));
            }
            return Ok(GroupSpec::FromFile(PathBuf::from(
                &self.src[from..self.pos],
            )));
        }
        if name == "SD" {
            return self.semidirect();
        }
        let family = Family::from_name(name).ok_or_else(|| CliError::UnknownFamily {
            pos: start,
            name: name.to_string(),
        })?;
        self.expect('(')?;
        if family == Family::Psl2 {
            let at = self.pos;
            if self.natural()? != 2 {
                return Err(CliError::Syntax {
                    pos: at,
                    msg: "only PSL(2,q) is supported".into(),
                });
            }
            self.expect(',')?;
        }
        self.skip_ws();
        let at = self.pos;
        let n = self.natural()?;
        self.expect(')')?;
        family
            .validate(n)
            .map_err(|msg| CliError::InvalidParameter { pos: at, msg })?;
        Ok(GroupSpec::Family(family, n))
    }

    fn semidirect(&mut self) -> Result<GroupSpec, CliError> {
        self.expect('(')?;
        self.skip_ws();
        let at = self.pos;
        let base = self.natural()?;
        let actor_order = if self.eat('^') {
            let k = self.natural()?;
            u32::try_from(k)
                .ok()
                .and_then(|k| base.checked_pow(k))
                .ok_or_else(|| CliError::InvalidParameter {
                    pos: at,
                    msg: "actor order overflows".into(),
                })?
        } else {
            base
        };
        if actor_order != 1 && prime_power(actor_order).is_none() {
            return Err(CliError::InvalidParameter {
                pos: at,
                msg: format!("actor order {actor_order} is not a prime power"),
            });
        }
        self.expect(';')?;
        let mut carrier = vec![self.natural()?];
        while self.eat(',') {
            carrier.push(self.natural()?);
        }
        self.expect(';')?;
        self.skip_ws();
        let matrix_at = self.pos;
        self.expect('[')?;
        let mut matrix = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = vec![self.integer()?];
            while self.eat(',') {
                row.push(self.integer()?);
            }
            self.expect(']')?;
            matrix.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        self.expect(')')?;
        if matrix.len() != carrier.len() || matrix.iter().any(|r| r.len() != carrier.len()) {
            return Err(CliError::InvalidParameter {
                pos: matrix_at,
                msg: format!("matrix must be {0}x{0}", carrier.len()),
            });
        }
        Ok(GroupSpec::Semidirect {
            actor_order,
            carrier,
            matrix,
        })
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, CliError> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(spec)
}
