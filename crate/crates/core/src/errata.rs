//! Published figures that disagree with recomputation.

use serde::Serialize;

use crate::enumeration::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub quantity: &'static str,
    pub printed: &'static str,
    pub value: String,
    pub resolution: &'static str,
}

pub fn errata() -> Vec<Erratum> {
    let c21 = binomial(21, 8).expect("small");
    vec![
        Erratum {
            quantity: "C(21, 8)",
            printed: "203,440",
            value: c21.to_string(),
            resolution: "typo; 8 * 203490 = 1627920 matches the printed point-omitting total",
        },
        Erratum {
            quantity: "admissible complexes in Z_2^3",
            printed: "937,438",
            value: "937440".into(),
            resolution: "published correction; reproduced by the census",
        },
        Erratum {
            quantity: "inadmissible complexes in Z_2^3",
            printed: "2,170,667",
            value: "2170665".into(),
            resolution: "published correction; reproduced by the census",
        },
        Erratum {
            quantity: "line incidence matrix of Z_2^3",
            printed: "29 rows, one of weight 1",
            value: "28 rows, each of weight 2".into(),
            resolution: "the matrix is generated from the geometry, not transcribed",
        },
    ]
}
