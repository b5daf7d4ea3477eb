use serde::Serialize;

use super::{abelian_group, automorphism_group, character_table, construct_named, enumerate_abelian_types, Family};
use crate::error::{Error, Result};
use crate::perm_group::PermGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub order: u64,
    pub name: String,
    pub is_abelian: bool,
    /// In class order: by element order, then smallest member.
    pub class_sizes: Vec<u64>,
    pub class_rep_orders: Vec<u64>,
    pub irrep_degrees: Vec<u64>,
    pub aut_order: Option<u64>,
    pub notes: String,
}

struct Expected {
    name: &'static str,
    aut_order: u64,
    /// Sorted class sizes; empty for abelian entries (all ones).
    class_sizes: &'static [u64],
    degrees: &'static [u64],
    notes: &'static str,
}

const ABELIAN_AUT: &[(&str, u64)] = &[
    ("Z1", 1),
    ("Z2", 1),
    ("Z3", 2),
    ("Z4", 2),
    ("V", 6),
    ("Z5", 4),
    ("Z6", 2),
    ("Z7", 6),
    ("Z8", 4),
    ("Z4xZ2", 8),
    ("Z2xZ2xZ2", 168),
    ("Z9", 6),
    ("Z3xZ3", 48),
    ("Z10", 4),
    ("Z11", 10),
    ("Z12", 4),
    ("Z2xZ2xZ3", 12),
    ("Z13", 12),
    ("Z14", 6),
    ("Z15", 8),
];

fn nonabelian() -> Vec<(Family, Expected)> {
    vec![
        (
            Family::Symmetric(3),
            Expected { name: "S3", aut_order: 6, class_sizes: &[1, 2, 3], degrees: &[1, 1, 2], notes: "D3 = Hol(Z3)" },
        ),
        (
            Family::Dihedral(4),
            Expected {
                name: "D4",
                aut_order: 8,
                class_sizes: &[1, 1, 2, 2, 2],
                degrees: &[1, 1, 1, 1, 2],
                notes: "Out = Z2",
            },
        ),
        (
            Family::Quaternion,
            Expected {
                name: "Q",
                aut_order: 24,
                class_sizes: &[1, 1, 2, 2, 2],
                degrees: &[1, 1, 1, 1, 2],
                notes: "Out = S3; three classes of order 4",
            },
        ),
        (
            Family::Dihedral(5),
            Expected { name: "D5", aut_order: 20, class_sizes: &[1, 2, 2, 5], degrees: &[1, 1, 2, 2], notes: "" },
        ),
        (
            Family::Dihedral(6),
            Expected {
                name: "D6",
                aut_order: 12,
                class_sizes: &[1, 1, 2, 2, 3, 3],
                degrees: &[1, 1, 1, 1, 2, 2],
                notes: "D6 = Z2 x S3",
            },
        ),
        (
            Family::Alternating(4),
            Expected {
                name: "A4", aut_order: 24, class_sizes: &[1, 3, 4, 4], degrees: &[1, 1, 1, 3], notes: "V ⋊ Z3"
            },
        ),
        (
            Family::Dicyclic(3),
            Expected {
                name: "Dic3",
                aut_order: 12,
                class_sizes: &[1, 1, 2, 2, 3, 3],
                degrees: &[1, 1, 1, 1, 2, 2],
                notes: "Z3 ⋊ Z4",
            },
        ),
        (
            Family::Dihedral(7),
            Expected { name: "D7", aut_order: 42, class_sizes: &[1, 2, 2, 2, 7], degrees: &[1, 1, 2, 2, 2], notes: "" },
        ),
    ]
}

fn verify(g: &PermGroup, exp: &Expected, abelian: bool) -> Result<CatalogEntry> {
    let order = g.order_u64().unwrap();
    let defect = |what: &str| Error::Defect(format!("catalog entry {}: {what}", exp.name));
    if g.is_abelian() != abelian {
        return Err(defect("abelian flag"));
    }
    let classes = g.conjugacy_classes()?;
    let table = character_table(g)?;
    let aut = automorphism_group(g)?;
    let mut sorted = classes.class_sizes.clone();
    sorted.sort_unstable();
    let want_sizes: Vec<u64> = if abelian { vec![1; order as usize] } else { exp.class_sizes.to_vec() };
    let want_degrees: Vec<u64> = if abelian { vec![1; order as usize] } else { exp.degrees.to_vec() };
    if sorted != want_sizes {
        return Err(defect(&format!("class sizes {sorted:?}")));
    }
    if table.degrees != want_degrees {
        return Err(defect(&format!("degrees {:?}", table.degrees)));
    }
    if classes.class_sizes.iter().sum::<u64>() != order
        || table.degrees.iter().map(|d| d * d).sum::<u64>() != order
        || table.degrees.len() != classes.num_classes
    {
        return Err(defect("Burnside relation"));
    }
    if aut.aut_order != exp.aut_order {
        return Err(defect(&format!("automorphism group order {}", aut.aut_order)));
    }
    Ok(CatalogEntry {
        order,
        name: exp.name.to_string(),
        is_abelian: abelian,
        class_sizes: classes.class_sizes,
        class_rep_orders: classes.class_rep_orders,
        irrep_degrees: table.degrees,
        aut_order: Some(aut.aut_order),
        notes: exp.notes.to_string(),
    })
}

fn abelian_name(t: &super::AbelianType) -> String {
    let f = t.factors();
    match f {
        [] => "Z1".into(),
        [2, 2] => "V".into(),
        _ if t.invariant_factors().len() == 1 => format!("Z{}", t.order()),
        _ => t.to_string(),
    }
}

/// Every group of order below 16, built and checked against stored data.
pub fn small_group_catalog() -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for n in 1..16u64 {
        for t in enumerate_abelian_types(n)? {
            let name = abelian_name(&t);
            let &(_, aut_order) = ABELIAN_AUT
                .iter()
                .find(|(k, _)| *k == name)
                .ok_or_else(|| Error::Defect(format!("no stored data for {name}")))?;
            let name: &'static str = ABELIAN_AUT.iter().find(|(k, _)| *k == name).unwrap().0;
            let exp = Expected { name, aut_order, class_sizes: &[], degrees: &[], notes: "" };
            out.push(verify(&abelian_group(&t)?, &exp, true)?);
        }
    }
    for (fam, exp) in nonabelian() {
        out.push(verify(&construct_named(fam)?, &exp, false)?);
    }
    out.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
    Ok(out)
}

pub fn catalog_json(entries: &[CatalogEntry]) -> serde_json::Value {
    serde_json::to_value(entries).expect("catalog serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts() {
        let cat = small_group_catalog().unwrap();
        assert_eq!(cat.len(), 28);
        assert_eq!(cat.iter().filter(|e| e.is_abelian).count(), 20);
        let twelve: Vec<_> = cat.iter().filter(|e| e.order == 12).collect();
        assert_eq!(twelve.iter().filter(|e| e.is_abelian).count(), 2);
        assert_eq!(twelve.iter().filter(|e| !e.is_abelian).count(), 3);
        let fifteen: Vec<_> = cat.iter().filter(|e| e.order == 15).collect();
        assert_eq!(fifteen.len(), 1);
        assert_eq!(fifteen[0].name, "Z15");
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(cat.iter().filter(|e| e.order == p).count(), 1);
        }
    }

    #[test]
    fn d5_degrees() {
        let cat = small_group_catalog().unwrap();
        let d5 = cat.iter().find(|e| e.name == "D5").unwrap();
        assert_eq!(d5.irrep_degrees, vec![1, 1, 2, 2]);
    }
}
