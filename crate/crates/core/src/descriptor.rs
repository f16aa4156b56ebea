//! Graph descriptors: `K[a,b]` factors joined by `x`, or `ucg:<n>`.
//!
//! Whitespace is ignored when parsing. The canonical rendering sorts the
//! factors by `(b, a)` and is used verbatim as a cache key.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graphkit::{self, Factor, Graph, ProductSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Descriptor {
    Product(ProductSpec),
    UnitaryCayley(u64),
}

impl Descriptor {
    pub fn parse(input: &str) -> Result<Descriptor> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let fail = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        if compact.is_empty() {
            return Err(fail("empty descriptor"));
        }
        if let Some(rest) = compact.strip_prefix("ucg:") {
            let n: u64 = rest.parse().map_err(|_| fail("expected an integer after 'ucg:'"))?;
            if n < 2 {
                return Err(fail("unitary Cayley graph needs n >= 2"));
            }
            return Ok(Descriptor::UnitaryCayley(n));
        }
        let factors = compact
            .split('x')
            .map(|tok| parse_factor(tok).map_err(|reason| fail(&reason)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Descriptor::Product(ProductSpec::new(factors).map_err(|e| fail(&e.to_string()))?))
    }

    pub fn canonical(&self) -> Descriptor {
        match self {
            Descriptor::Product(spec) => Descriptor::Product(spec.canonical()),
            Descriptor::UnitaryCayley(n) => Descriptor::UnitaryCayley(*n),
        }
    }

    /// Canonical string: sorted factors, no whitespace.
    pub fn canonical_string(&self) -> String {
        self.canonical().to_string()
    }

    pub fn vertex_count(&self) -> u128 {
        match self {
            Descriptor::Product(spec) => spec.vertex_count_u128(),
            Descriptor::UnitaryCayley(n) => *n as u128,
        }
    }

    /// Materializes the graph; products use canonical factor order.
    pub fn graph(&self) -> Result<Graph> {
        self.graph_with_cap(graphkit::DEFAULT_VERTEX_CAP)
    }

    pub fn graph_with_cap(&self, cap: usize) -> Result<Graph> {
        match self {
            Descriptor::Product(spec) => graphkit::product_spec_graph_with_cap(&spec.canonical(), cap),
            Descriptor::UnitaryCayley(n) => graphkit::unitary_cayley_with_cap(*n, cap),
        }
    }

    /// Product form: the spec itself, or the CRT factors of `X_n`.
    pub fn product_spec(&self) -> Result<ProductSpec> {
        match self {
            Descriptor::Product(spec) => Ok(spec.canonical()),
            Descriptor::UnitaryCayley(n) => Ok(graphkit::crt_isomorphism(*n)?.spec().clone()),
        }
    }
}

fn parse_factor(tok: &str) -> std::result::Result<Factor, String> {
    let inner = tok
        .strip_prefix("K[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("expected K[a,b], found {tok:?}"))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| format!("expected two numbers in {tok:?}"))?;
    let a: u64 = a.parse().map_err(|_| format!("bad part size in {tok:?}"))?;
    let b: u64 = b.parse().map_err(|_| format!("bad part count in {tok:?}"))?;
    Factor::new(a, b).map_err(|e| e.to_string())
}

impl serde::Serialize for Descriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Product(spec) => write!(f, "{spec}"),
            Descriptor::UnitaryCayley(n) => write!(f, "ucg:{n}"),
        }
    }
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Descriptor::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_products_and_ucg() {
        let d = Descriptor::parse(" K[1,5] x K[1,2]xK[1,3] ").unwrap();
        assert_eq!(d.canonical_string(), "K[1,2]xK[1,3]xK[1,5]");
        assert_eq!(Descriptor::parse("ucg:30").unwrap(), Descriptor::UnitaryCayley(30));
        assert_eq!(Descriptor::parse("ucg : 3 0").unwrap().to_string(), "ucg:30");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "K[1,1]", "K[0,3]", "K[1,2]x", "ucg:1", "ucg:x", "K1,2", "K[1,2]*K[1,3]", "K[1]"] {
            assert!(matches!(Descriptor::parse(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn ucg_product_spec_is_crt_form() {
        let spec = Descriptor::parse("ucg:12").unwrap().product_spec().unwrap();
        assert_eq!(spec.to_string(), "K[2,2]xK[1,3]");
    }

    proptest! {
        #[test]
        fn canonical_rendering_round_trips(pairs in prop::collection::vec((1u64..6, 2u64..9), 1..5)) {
            let spec = ProductSpec::from_pairs(&pairs).unwrap();
            let canon = Descriptor::Product(spec).canonical_string();
            let reparsed = Descriptor::parse(&canon).unwrap();
            prop_assert_eq!(reparsed.to_string(), canon.clone());
            prop_assert_eq!(reparsed.canonical_string(), canon);
        }
    }
}
