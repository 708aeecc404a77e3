use serde::{Deserialize, Serialize};

use super::{validate_space, NormedSpace};
use crate::error::{Error, Result};

/// Unvalidated space description, as read from JSON:
/// `{"type":"lp","dim":2,"p":3.0}`, `{"type":"linf","dim":4}`,
/// `{"type":"day_james","p":3.0,"q":1.5}`, `{"type":"inf_sum","parts":[...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SpaceDescriptor {
    Lp { dim: usize, p: f64 },
    Linf { dim: usize },
    DayJames { p: f64, q: f64 },
    InfSum { parts: Vec<SpaceDescriptor> },
}

pub(super) fn parse_compact(s: &str) -> Result<NormedSpace> {
    let mut parser = Parser { src: s, pos: 0 };
    let d = parser.space()?;
    parser.skip_ws();
    if parser.pos != s.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    validate_space(&d)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a space name"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn token(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find([':', ',', '(', ')'])
            .unwrap_or(self.rest().len());
        self.pos += len;
        self.src[start..start + len].trim_end()
    }

    fn number(&mut self) -> Result<f64> {
        self.eat(':')?;
        let start = self.pos;
        let tok = self.token();
        tok.parse::<f64>().map_err(|_| Error::Parse {
            position: start,
            message: format!("invalid number '{tok}'"),
        })
    }

    fn integer(&mut self) -> Result<usize> {
        self.eat(':')?;
        let start = self.pos;
        let tok = self.token();
        tok.parse::<usize>().map_err(|_| Error::Parse {
            position: start,
            message: format!("invalid dimension '{tok}'"),
        })
    }

    fn space(&mut self) -> Result<SpaceDescriptor> {
        let start = self.pos;
        let name = self.ident()?.to_ascii_lowercase();
        match name.as_str() {
            "lp" => {
                let dim = self.integer()?;
                let p = self.number()?;
                Ok(SpaceDescriptor::Lp { dim, p })
            }
            "linf" => Ok(SpaceDescriptor::Linf {
                dim: self.integer()?,
            }),
            "dayjames" | "day_james" => {
                let p = self.number()?;
                let q = self.number()?;
                Ok(SpaceDescriptor::DayJames { p, q })
            }
            "sum" => {
                self.eat('(')?;
                let mut parts = vec![self.space()?];
                loop {
                    self.skip_ws();
                    if self.rest().starts_with(',') {
                        self.pos += 1;
                        parts.push(self.space()?);
                    } else {
                        self.eat(')')?;
                        break;
                    }
                }
                Ok(SpaceDescriptor::InfSum { parts })
            }
            other => Err(Error::Parse {
                position: start,
                message: format!("unknown space '{other}'"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_compact_forms() {
        let s = NormedSpace::parse_compact("dayjames:3:1.5").unwrap();
        assert_eq!(s, NormedSpace::day_james(3.0, 1.5).unwrap());
        let s = NormedSpace::parse_compact("sum(lp:2:2,linf:3)").unwrap();
        assert_eq!(s.dim(), 5);
        let s = NormedSpace::parse_compact(" sum( dayjames:3:1.5 , sum(linf:1,lp:3:4) ) ").unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.compact(), "sum(dayjames:3:1.5,sum(linf:1,lp:3:4))");
    }

    #[test]
    fn compact_errors_carry_position() {
        assert!(matches!(
            NormedSpace::parse_compact("lp:2:0.5"),
            Err(Error::InvalidExponent { .. })
        ));
        match NormedSpace::parse_compact("lp:2:x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        match NormedSpace::parse_compact("sum(linf:2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 10),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            NormedSpace::parse_compact("sum(linf:2)"),
            Err(Error::EmptySum(1))
        ));
        assert!(matches!(
            NormedSpace::parse_compact("ball:2"),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            NormedSpace::parse_compact("linf:2 extra"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn json_descriptor() {
        let text = r#"{"type":"inf_sum","parts":[{"type":"day_james","p":3.0,"q":1.5},{"type":"linf","dim":2}]}"#;
        let s = NormedSpace::from_json(text).unwrap();
        assert_eq!(s.compact(), "sum(dayjames:3:1.5,linf:2)");
        let back = serde_json::to_string(&s.descriptor()).unwrap();
        assert_eq!(NormedSpace::from_json(&back).unwrap(), s);
        assert!(NormedSpace::from_json(r#"{"type":"lp","dim":0,"p":2.0}"#).is_err());
    }

    fn arb_descriptor() -> impl Strategy<Value = SpaceDescriptor> {
        let leaf = prop_oneof![
            (1usize..6, 1.01f64..8.0).prop_map(|(dim, p)| SpaceDescriptor::Lp { dim, p }),
            (1usize..6).prop_map(|dim| SpaceDescriptor::Linf { dim }),
            (1.01f64..8.0, 1.01f64..8.0).prop_map(|(p, q)| SpaceDescriptor::DayJames { p, q }),
        ];
        leaf.prop_recursive(3, 12, 4, |inner| {
            prop::collection::vec(inner, 2..4).prop_map(|parts| SpaceDescriptor::InfSum { parts })
        })
    }

    proptest! {
        #[test]
        fn compact_round_trip(d in arb_descriptor()) {
            let s = validate_space(&d).unwrap();
            let again = NormedSpace::parse_compact(&s.compact()).unwrap();
            prop_assert_eq!(again, s);
        }
    }
}
