//! Orders and family metadata for the 26 sporadic simple groups.

use num_bigint::BigUint;
use serde::Serialize;

use crate::numtheory::product_of_powers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generation {
    Mathieu,
    Leech,
    Monster,
    Pariah,
}

#[derive(Debug, Clone, Serialize)]
pub struct SporadicEntry {
    pub symbol: &'static str,
    pub name: &'static str,
    pub generation: Generation,
    pub factorization: &'static [(u64, u32)],
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub order: BigUint,
    pub discoverer: &'static str,
    pub year: u32,
}

type Row = (&'static str, &'static str, Generation, &'static [(u64, u32)], &'static str, u32);

use Generation::*;

const TABLE: &[Row] = &[
    ("M11", "Mathieu", Mathieu, &[(2, 4), (3, 2), (5, 1), (11, 1)], "Mathieu", 1861),
    ("M12", "Mathieu", Mathieu, &[(2, 6), (3, 3), (5, 1), (11, 1)], "Mathieu", 1861),
    ("J1", "Janko", Pariah, &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)], "Janko", 1965),
    ("M22", "Mathieu", Mathieu, &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)], "Mathieu", 1873),
    ("J2", "Hall-Janko", Leech, &[(2, 7), (3, 3), (5, 2), (7, 1)], "Janko; Hall", 1968),
    ("M23", "Mathieu", Mathieu, &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)], "Mathieu", 1873),
    ("HS", "Higman-Sims", Leech, &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)], "Higman, Sims", 1968),
    ("J3", "Janko", Pariah, &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)], "Janko", 1968),
    ("M24", "Mathieu", Mathieu, &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)], "Mathieu", 1873),
    ("McL", "McLaughlin", Leech, &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)], "McLaughlin", 1969),
    ("He", "Held", Monster, &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)], "Held", 1969),
    ("Ru", "Rudvalis", Pariah, &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)], "Rudvalis", 1972),
    ("Suz", "Suzuki", Leech, &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)], "Suzuki", 1969),
    ("ON", "O'Nan", Pariah, &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)], "O'Nan", 1973),
    ("Co3", "Conway", Leech, &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)], "Conway", 1969),
    ("Co2", "Conway", Leech, &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)], "Conway", 1969),
    ("Fi22", "Fischer", Monster, &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)], "Fischer", 1971),
    ("HN", "Harada-Norton", Monster, &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)], "Harada, Norton", 1976),
    ("Ly", "Lyons", Pariah, &[(2, 8), (3, 7), (5, 6), (7, 1), (11, 1), (31, 1), (37, 1), (67, 1)], "Lyons", 1969),
    ("Th", "Thompson", Monster, &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)], "Thompson", 1976),
    (
        "Fi23",
        "Fischer",
        Monster,
        &[(2, 18), (3, 13), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (23, 1)],
        "Fischer",
        1971,
    ),
    ("Co1", "Conway", Leech, &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)], "Conway", 1969),
    (
        "J4",
        "Janko",
        Pariah,
        &[(2, 21), (3, 3), (5, 1), (7, 1), (11, 3), (23, 1), (29, 1), (31, 1), (37, 1), (43, 1)],
        "Janko",
        1975,
    ),
    (
        "Fi24'",
        "Fischer",
        Monster,
        &[(2, 21), (3, 16), (5, 2), (7, 3), (11, 1), (13, 1), (17, 1), (23, 1), (29, 1)],
        "Fischer",
        1971,
    ),
    (
        "B",
        "Baby Monster",
        Monster,
        &[(2, 41), (3, 13), (5, 6), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (31, 1), (47, 1)],
        "Fischer",
        1973,
    ),
    (
        "M",
        "Monster",
        Monster,
        &[
            (2, 46),
            (3, 20),
            (5, 9),
            (7, 6),
            (11, 2),
            (13, 3),
            (17, 1),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
            (41, 1),
            (47, 1),
            (59, 1),
            (71, 1),
        ],
        "Fischer, Griess",
        1973,
    ),
];

/// All 26 entries, ascending by order.
pub fn sporadic_table() -> Vec<SporadicEntry> {
    let mut out: Vec<SporadicEntry> = TABLE
        .iter()
        .map(|&(symbol, name, generation, factorization, discoverer, year)| SporadicEntry {
            symbol,
            name,
            generation,
            factorization,
            order: product_of_powers(factorization),
            discoverer,
            year,
        })
        .collect();
    out.sort_by(|a, b| a.order.cmp(&b.order));
    out
}

pub fn sporadic_order(symbol: &str) -> Option<BigUint> {
    TABLE.iter().find(|r| r.0 == symbol).map(|r| product_of_powers(r.3))
}

pub fn sporadic_json() -> serde_json::Value {
    serde_json::to_value(sporadic_table()).expect("table serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use std::collections::BTreeSet;

    /// Decimal orders as printed in the survey table (spacing removed). The
    /// Baby Monster line is garbled there and is omitted.
    const PRINTED: &[(&str, &str)] = &[
        ("M11", "7920"),
        ("M12", "95040"),
        ("J1", "175560"),
        ("M22", "443520"),
        ("J2", "604800"),
        ("M23", "10200960"),
        ("HS", "44352000"),
        ("J3", "50232960"),
        ("M24", "244823040"),
        ("McL", "898128000"),
        ("He", "4030387200"),
        ("Ru", "145926144000"),
        ("Suz", "448345497600"),
        ("ON", "460815505920"),
        ("Co3", "495766656000"),
        ("Co2", "42305421312000"),
        ("Fi22", "64561751654400"),
        ("HN", "273030912000000"),
        ("Ly", "51765179004000000"),
        ("Th", "90745943887872000"),
        ("Fi23", "4089470473293004800"),
        ("Co1", "4157776806543360000"),
        ("J4", "86775571046077562880"),
        ("Fi24'", "1255205709190661721292800"),
    ];

    /// Factored forms as printed, where given.
    const PRINTED_FACTORED: &[(&str, &[(u64, u32)])] = &[
        ("J1", &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)]),
        ("J3", &[(2, 7), (3, 5), (5, 1), (7, 1), (17, 1), (19, 1)]),
        ("Ly", &[(2, 8), (3, 7), (5, 6), (7, 1), (11, 1), (31, 1), (37, 1), (67, 1)]),
        ("Ru", &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)]),
        ("ON", &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)]),
        ("J4", &[(2, 21), (3, 3), (5, 1), (7, 1), (11, 3), (23, 1), (29, 1), (31, 1), (37, 1), (43, 1)]),
        ("Co1", &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)]),
        ("Co2", &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)]),
        ("Co3", &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)]),
        ("Suz", &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)]),
        ("McL", &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)]),
        ("HS", &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)]),
        ("J2", &[(2, 7), (3, 3), (5, 2), (7, 1)]),
        ("M24", &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)]),
        ("Fi22", &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)]),
        ("Fi23", &[(2, 18), (3, 13), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (23, 1)]),
        ("Fi24'", &[(2, 21), (3, 16), (5, 2), (7, 3), (11, 1), (13, 1), (23, 1), (29, 1)]),
        ("HN", &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)]),
        ("Th", &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)]),
        ("He", &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)]),
        ("B", &[(2, 41), (3, 13), (5, 6), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (31, 1), (47, 1)]),
        (
            "M",
            &[
                (2, 46),
                (3, 20),
                (5, 9),
                (7, 6),
                (11, 2),
                (13, 3),
                (17, 1),
                (19, 1),
                (23, 1),
                (29, 1),
                (31, 1),
                (41, 1),
                (47, 1),
                (59, 1),
                (71, 1),
            ],
        ),
    ];

    #[test]
    fn shape_of_table() {
        let t = sporadic_table();
        assert_eq!(t.len(), 26);
        assert_eq!(t[0].symbol, "M11");
        assert_eq!(t[0].order, BigUint::from(7920u32));
        assert_eq!(t[25].symbol, "M");
        let count = |g| t.iter().filter(|e| e.generation == g).count();
        assert_eq!((count(Mathieu), count(Leech), count(Monster), count(Pariah)), (5, 7, 8, 6));
        let pariahs: BTreeSet<&str> = t.iter().filter(|e| e.generation == Pariah).map(|e| e.symbol).collect();
        assert_eq!(pariahs, BTreeSet::from(["J1", "J3", "J4", "Ly", "ON", "Ru"]));
        assert!(t.iter().all(|e| (&e.order % 2u32).is_zero()));
    }

    #[test]
    fn decimals_agree_with_factorizations() {
        for &(sym, dec) in PRINTED {
            assert_eq!(sporadic_order(sym).unwrap().to_string(), dec, "{sym}");
        }
        assert_eq!(sporadic_order("Co1").unwrap().to_string(), "4157776806543360000");
        assert_eq!(sporadic_order("B").unwrap().to_string(), "4154781481226426191177580544000000");
    }

    #[test]
    fn printed_factorizations_differ_only_where_known() {
        let mismatched: BTreeSet<&str> = PRINTED_FACTORED
            .iter()
            .filter(|(sym, f)| product_of_powers(f) != sporadic_order(sym).unwrap())
            .map(|(sym, _)| *sym)
            .collect();
        // J3: a spurious factor 7; Fi24': the factor 17 is missing.
        assert_eq!(mismatched, BTreeSet::from(["Fi24'", "J3"]));
    }

    #[test]
    fn divisibility_by_three() {
        let missing: Vec<&str> =
            sporadic_table().iter().filter(|e| !(&e.order % 3u32).is_zero()).map(|e| e.symbol).collect();
        assert!(missing.is_empty(), "{missing:?}");
    }
}
