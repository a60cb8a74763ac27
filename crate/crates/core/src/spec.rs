//! Group descriptions: built-in families, explicit permutation generators,
//! and the JSON form used on disk.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_ORDER_CAP: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Alternating {
        n: usize,
    },
    Psl2 {
        p: usize,
    },
    Explicit {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub kind: GroupKind,
}

impl GroupSpec {
    pub fn alternating(n: usize) -> Self {
        GroupSpec {
            name: format!("a{n}"),
            kind: GroupKind::Alternating { n },
        }
    }

    pub fn psl2(p: usize) -> Self {
        GroupSpec {
            name: format!("psl2_{p}"),
            kind: GroupKind::Psl2 { p },
        }
    }

    pub fn explicit(name: impl Into<String>, degree: usize, generators: Vec<Permutation>) -> Self {
        GroupSpec {
            name: name.into(),
            kind: GroupKind::Explicit { degree, generators },
        }
    }

    /// The order the family formula predicts, when known without closure.
    pub fn expected_order(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Alternating { n } => Some((1..=n).product::<usize>() / 2),
            GroupKind::Psl2 { p } => Some(p * (p * p - 1) / 2),
            GroupKind::Explicit { .. } => None,
        }
    }

    /// Checks parameters and, for families, the predicted order against `cap`.
    pub fn validate(&self, cap: usize) -> Result<()> {
        match &self.kind {
            GroupKind::Alternating { n } => {
                if *n < 5 {
                    return Err(Error::spec(
                        "n",
                        format!("alternating degree must be >= 5, got {n}"),
                    ));
                }
                if *n > 12 {
                    return Err(Error::OrderCapExceeded { cap });
                }
            }
            GroupKind::Psl2 { p } => {
                if *p < 5 || !is_prime(*p) {
                    return Err(Error::spec("p", format!("must be a prime >= 5, got {p}")));
                }
                if *p > 1000 {
                    return Err(Error::OrderCapExceeded { cap });
                }
            }
            GroupKind::Explicit { degree, generators } => {
                if generators.is_empty() {
                    return Err(Error::EmptyGenerators);
                }
                for (k, g) in generators.iter().enumerate() {
                    if g.degree() != *degree {
                        return Err(Error::spec(
                            format!("generators[{k}]"),
                            format!("length {} does not match degree {degree}", g.degree()),
                        ));
                    }
                }
            }
        }
        if let Some(order) = self.expected_order() {
            if order > cap {
                return Err(Error::OrderCapExceeded { cap });
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        match &self.kind {
            GroupKind::Alternating { n } => *n,
            GroupKind::Psl2 { p } => p + 1,
            GroupKind::Explicit { degree, .. } => *degree,
        }
    }

    /// The defining generators as permutations.
    ///
    /// Alternating groups use `(0 1 2)` with `(0 1 … n-1)` for odd `n` and
    /// `(1 2 … n-1)` for even `n`. `PSL(2,p)` acts on the projective line
    /// `{0, …, p-1, ∞ = p}` via `z ↦ z+1` and `z ↦ -1/z`.
    pub fn generators(&self) -> Result<Vec<Permutation>> {
        match &self.kind {
            GroupKind::Alternating { n } => {
                let n = *n;
                let three = Permutation::from_cycles(n, &[&[0, 1, 2]])?;
                let long: Vec<u32> = if n % 2 == 1 {
                    (0..n as u32).collect()
                } else {
                    (1..n as u32).collect()
                };
                let long = Permutation::from_cycles(n, &[&long])?;
                Ok(vec![three, long])
            }
            GroupKind::Psl2 { p } => {
                let p = *p as u64;
                let inf = p as u32;
                let t: Vec<u32> = (0..p)
                    .map(|z| ((z + 1) % p) as u32)
                    .chain(std::iter::once(inf))
                    .collect();
                let s: Vec<u32> = (0..p)
                    .map(|z| {
                        if z == 0 {
                            inf
                        } else {
                            ((p - mod_inverse(z, p)) % p) as u32
                        }
                    })
                    .chain(std::iter::once(0))
                    .collect();
                Ok(vec![Permutation::new(t)?, Permutation::new(s)?])
            }
            GroupKind::Explicit { generators, .. } => Ok(generators.clone()),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_json(&value)
    }

    /// Parses `{"name", "family": "alternating"|"psl2", "n"|"p"}` or
    /// `{"name", "degree", "generators": [[…], …]}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::spec("<root>", "expected a JSON object"))?;
        let name = match obj.get("name") {
            Some(Value::String(s)) if !s.is_empty() => s.clone(),
            Some(_) => return Err(Error::spec("name", "expected a non-empty string")),
            None => return Err(Error::spec("name", "missing")),
        };
        if let Some(family) = obj.get("family") {
            let family = family
                .as_str()
                .ok_or_else(|| Error::spec("family", "expected a string"))?;
            let kind = match family {
                "alternating" => GroupKind::Alternating {
                    n: get_uint(obj, "n")?,
                },
                "psl2" => GroupKind::Psl2 {
                    p: get_uint(obj, "p")?,
                },
                other => {
                    return Err(Error::spec(
                        "family",
                        format!("unknown family {other:?} (expected \"alternating\" or \"psl2\")"),
                    ))
                }
            };
            return Ok(GroupSpec { name, kind });
        }
        let degree = get_uint(obj, "degree")?;
        let gens = obj
            .get("generators")
            .ok_or_else(|| Error::spec("generators", "missing"))?
            .as_array()
            .ok_or_else(|| Error::spec("generators", "expected an array of arrays"))?;
        let mut generators = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            let field = format!("generators[{k}]");
            let arr = g
                .as_array()
                .ok_or_else(|| Error::spec(&field, "expected an array of integers"))?;
            let images = arr
                .iter()
                .map(|v| {
                    v.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| Error::spec(&field, "entries must be non-negative integers"))
                })
                .collect::<Result<Vec<u32>>>()?;
            if images.len() != degree {
                return Err(Error::spec(
                    &field,
                    format!("length {} does not match degree {degree}", images.len()),
                ));
            }
            let perm = Permutation::new(images).map_err(|e| Error::spec(&field, e.to_string()))?;
            generators.push(perm);
        }
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        Ok(GroupSpec {
            name,
            kind: GroupKind::Explicit { degree, generators },
        })
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("name".into(), Value::from(self.name.clone()));
        match &self.kind {
            GroupKind::Alternating { n } => {
                obj.insert("family".into(), Value::from("alternating"));
                obj.insert("n".into(), Value::from(*n));
            }
            GroupKind::Psl2 { p } => {
                obj.insert("family".into(), Value::from("psl2"));
                obj.insert("p".into(), Value::from(*p));
            }
            GroupKind::Explicit { degree, generators } => {
                obj.insert("degree".into(), Value::from(*degree));
                obj.insert(
                    "generators".into(),
                    Value::from(
                        generators
                            .iter()
                            .map(|g| Value::from(g.images().to_vec()))
                            .collect::<Vec<_>>(),
                    ),
                );
            }
        }
        Value::Object(obj)
    }
}

fn get_uint(obj: &Map<String, Value>, field: &str) -> Result<usize> {
    obj.get(field)
        .ok_or_else(|| Error::spec(field, "missing"))?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| Error::spec(field, "expected a non-negative integer"))
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// The named groups the tools ship with, with the order cap each needs.
pub const CATALOG: &[&str] = &["a5", "a6", "a7", "psl2_7", "psl2_11"];

pub fn catalog(name: &str) -> Option<GroupSpec> {
    match name {
        "a5" => Some(GroupSpec::alternating(5)),
        "a6" => Some(GroupSpec::alternating(6)),
        "a7" => Some(GroupSpec::alternating(7)),
        "psl2_7" => Some(GroupSpec::psl2(7)),
        "psl2_11" => Some(GroupSpec::psl2(11)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_family_specs() {
        let s =
            GroupSpec::from_json_str(r#"{"name": "a5", "family": "alternating", "n": 5}"#).unwrap();
        assert_eq!(s.kind, GroupKind::Alternating { n: 5 });
        let s = GroupSpec::from_json_str(r#"{"name": "l2_7", "family": "psl2", "p": 7}"#).unwrap();
        assert_eq!(s.kind, GroupKind::Psl2 { p: 7 });
        assert_eq!(s.expected_order(), Some(168));
    }

    #[test]
    fn parses_explicit_specs() {
        let s = GroupSpec::from_json_str(
            r#"{"name": "s5", "degree": 5, "generators": [[1,0,2,3,4],[1,2,3,4,0]]}"#,
        )
        .unwrap();
        assert_eq!(s.degree(), 5);
        assert_eq!(GroupSpec::from_json(&s.to_json()).unwrap(), s);
    }

    fn field_of(text: &str) -> String {
        match GroupSpec::from_json_str(text) {
            Err(Error::InvalidSpec { field, .. }) => field,
            other => panic!("expected spec error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(field_of(r#"{"family": "psl2", "p": 7}"#), "name");
        assert_eq!(field_of(r#"{"name": "g", "family": "psl2"}"#), "p");
        assert_eq!(
            field_of(r#"{"name": "g", "family": "sym", "n": 5}"#),
            "family"
        );
        assert_eq!(
            field_of(r#"{"name": "g", "degree": 3, "generators": [[0,1,2],[0,0,1]]}"#),
            "generators[1]"
        );
        assert_eq!(
            field_of(r#"{"name": "g", "degree": 3, "generators": [[0,1]]}"#),
            "generators[0]"
        );
        assert_eq!(
            field_of(r#"{"name": "g", "generators": [[0,1]]}"#),
            "degree"
        );
        assert!(matches!(
            GroupSpec::from_json_str(r#"{"name": "g", "degree": 3, "generators": []}"#),
            Err(Error::EmptyGenerators)
        ));
    }

    #[test]
    fn family_bounds() {
        assert!(GroupSpec::alternating(4)
            .validate(DEFAULT_ORDER_CAP)
            .is_err());
        assert!(GroupSpec::psl2(9).validate(DEFAULT_ORDER_CAP).is_err());
        assert!(matches!(
            GroupSpec::alternating(7).validate(DEFAULT_ORDER_CAP),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(GroupSpec::alternating(7).validate(2520).is_ok());
        assert!(GroupSpec::psl2(11).validate(DEFAULT_ORDER_CAP).is_ok());
    }

    #[test]
    fn psl2_generators_act_on_projective_line() {
        let gens = GroupSpec::psl2(7).generators().unwrap();
        // t: z -> z+1 fixes infinity; s: z -> -1/z swaps 0 and infinity.
        assert_eq!(gens[0].apply(7), 7);
        assert_eq!(gens[0].apply(6), 0);
        assert_eq!(gens[1].apply(0), 7);
        assert_eq!(gens[1].apply(7), 0);
        // -1/2 = -4 = 3 mod 7
        assert_eq!(gens[1].apply(2), 3);
        assert!(gens[1].then(&gens[1]).is_identity());
    }
}
