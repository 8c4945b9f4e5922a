use serde::{Deserialize, Serialize};

use super::{bracket, named_elements, root_vector, weight_of, cartan_t, LieElt, Subspace, Weight};
use crate::exactnum::Scalar;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    /// Coordinates of the bracket in the distinguished basis.
    pub coords: Vec<Scalar>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootEntry {
    pub root: String,
    pub weight: String,
    pub matrix: Vec<Vec<Scalar>>,
    /// `c` with `[H, E] = c·E`.
    pub ad_h: Scalar,
    /// `c` with `[J, E] = c·E`.
    pub ad_j: Scalar,
}

/// Structure constants of gsp4 in the distinguished basis.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StructureDump {
    pub basis: Vec<NamedMatrix>,
    pub brackets: Vec<BracketEntry>,
    pub pinned: Vec<NamedMatrix>,
    pub root_vectors: Vec<RootEntry>,
}

pub(crate) fn root_label(w: Weight) -> String {
    let part = |n: i64, s: &str| match n {
        0 => String::new(),
        1 => s.to_string(),
        -1 => format!("-{s}"),
        k => format!("{k}{s}"),
    };
    let a = part(w.p2 / 2, "alpha");
    let b = part(w.q2 / 2, "beta");
    match (a.is_empty(), b.is_empty()) {
        (true, true) => "0".into(),
        (false, true) => a,
        (true, false) => b,
        (false, false) => {
            if b.starts_with('-') {
                format!("{a}{b}")
            } else {
                format!("{a}+{b}")
            }
        }
    }
}

pub fn structure_dump() -> StructureDump {
    let named = named_elements();
    let elts: Vec<LieElt> = named.iter().map(|(_, x)| x.clone()).collect();
    let space = Subspace::new("gsp4", elts.clone()).expect("distinguished basis");
    let basis = named
        .iter()
        .map(|(n, x)| NamedMatrix { name: n.to_string(), matrix: x.matrix().clone() })
        .collect();
    let mut brackets = Vec::new();
    for i in 0..elts.len() {
        for j in i + 1..elts.len() {
            let b = bracket(&elts[i], &elts[j]);
            brackets.push(BracketEntry {
                left: named[i].0.to_string(),
                right: named[j].0.to_string(),
                coords: space.coords(&b).expect("closed"),
            });
        }
    }
    let pinned = named
        .iter()
        .filter(|(n, _)| n.starts_with("E_"))
        .map(|(n, x)| NamedMatrix { name: n.to_string(), matrix: x.matrix().clone() })
        .collect();
    let t = cartan_t();
    let mut root_vectors = Vec::new();
    let mut roots = vec![
        Weight::new(1, 0),
        Weight::new(0, 1),
        Weight::new(1, 1),
        Weight::new(1, -1),
    ];
    roots.extend(roots.clone().into_iter().map(|w| -w));
    for w in roots {
        let e = root_vector(w).expect("root");
        let got = weight_of(&e, &t).expect("nonzero").expect("eigenvector");
        let (ad_h, ad_j) = got.eigenvalues();
        root_vectors.push(RootEntry {
            root: root_label(w),
            weight: w.to_string(),
            matrix: e.matrix().clone(),
            ad_h,
            ad_j,
        });
    }
    StructureDump { basis, brackets, pinned, root_vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_round_trip() {
        let d = structure_dump();
        let text = serde_json::to_string_pretty(&d).unwrap();
        let back: StructureDump = serde_json::from_str(&text).unwrap();
        assert_eq!(d, back);
        assert_eq!(d.brackets.len(), 55);
    }

    #[test]
    fn dump_has_h_on_alpha_plus_beta() {
        let d = structure_dump();
        let r = d.root_vectors.iter().find(|r| r.root == "alpha+beta").unwrap();
        assert_eq!(r.ad_h, Scalar::gauss(0, -2));
    }

    #[test]
    fn labels() {
        assert_eq!(root_label(Weight::new(-1, 1)), "-alpha+beta");
        assert_eq!(root_label(Weight::new(1, -1)), "alpha-beta");
        assert_eq!(root_label(Weight::new(0, -1)), "-beta");
    }
}
