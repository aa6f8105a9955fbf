use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ConsProd, Generator, LiFactor, LinComb};
use crate::error::{Error, Result};

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgJson {
    pub start: u32,
    pub end: u32,
    #[serde(default, skip_serializing_if = "is_false")]
    pub inverted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BerJson {
    pub k: u32,
    /// The argument is `z_start ⋯ z_N`.
    pub start: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiJson {
    pub index: Vec<u32>,
    pub args: Vec<ArgJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    /// Exact rational, `"p"` or `"p/q"`.
    pub coeff: String,
    pub ber: Vec<BerJson>,
    pub li: Vec<LiJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinCombJson {
    pub ambient: u32,
    pub terms: Vec<GeneratorJson>,
}

impl From<&LinComb> for LinCombJson {
    fn from(c: &LinComb) -> Self {
        LinCombJson {
            ambient: c.ambient(),
            terms: c
                .iter()
                .map(|(g, q)| GeneratorJson {
                    coeff: q.to_string(),
                    ber: g.bers().iter().map(|&(start, k)| BerJson { k, start }).collect(),
                    li: g
                        .lis()
                        .iter()
                        .map(|f| LiJson {
                            index: f.indices.clone(),
                            args: f
                                .args
                                .iter()
                                .map(|a| ArgJson { start: a.start, end: a.end, inverted: a.inverted })
                                .collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&LinCombJson> for LinComb {
    type Error = Error;

    fn try_from(j: &LinCombJson) -> Result<Self> {
        let mut c = LinComb::zero(j.ambient);
        for t in &j.terms {
            let q: BigRational = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            let lis = t
                .li
                .iter()
                .map(|l| {
                    if l.index.len() != l.args.len() {
                        return Err(Error::Parse("Li arity mismatch".into()));
                    }
                    let args = l.args.iter().map(|a| ConsProd { start: a.start, end: a.end, inverted: a.inverted });
                    Ok(LiFactor::new(l.index.clone(), args.collect()))
                })
                .collect::<Result<Vec<_>>>()?;
            for b in &t.ber {
                if b.start < 1 || b.start > j.ambient {
                    return Err(Error::Parse(format!("Ber start {} outside 1..{}", b.start, j.ambient)));
                }
            }
            for f in &lis {
                for a in &f.args {
                    if a.start < 1 || a.start > a.end || a.end > j.ambient {
                        return Err(Error::Parse(format!("argument span {}..{} out of range", a.start, a.end)));
                    }
                }
            }
            let g = Generator::new(j.ambient, t.ber.iter().map(|b| (b.start, b.k)).collect(), lis)?;
            c.add_term(g, q);
        }
        Ok(c)
    }
}

impl Serialize for LinComb {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LinCombJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinComb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LinCombJson::deserialize(d)?;
        LinComb::try_from(&j).map_err(serde::de::Error::custom)
    }
}
