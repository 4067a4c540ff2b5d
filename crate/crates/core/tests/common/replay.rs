//! Rebuild witnesses from report JSON and replay them.

use quatrec::algebra::{Algebra, Element};
use quatrec::witness::{Side, Witness};
use serde_json::Value;

fn element(alg: &Algebra, v: &Value) -> Element {
    let coords: Vec<&str> = v.as_array().expect("coordinate array").iter().map(|c| c.as_str().expect("string scalar")).collect();
    alg.lift_to_field().parse_element(&coords.join(",")).expect("coordinates parse")
}

fn side(v: &Value) -> Side {
    match v.as_str() {
        Some("left") => Side::Left,
        Some("right") => Side::Right,
        _ => Side::Both,
    }
}

fn index(v: &Value) -> usize {
    v.as_u64().expect("index") as usize
}

pub fn witness_from_json(alg: &Algebra, w: &Value) -> Witness {
    let e = |k: &str| element(alg, &w[k]);
    match w["kind"].as_str().expect("kind") {
        "non_associative" => Witness::NonAssociative { s: index(&w["s"]), t: index(&w["t"]), u: index(&w["u"]) },
        "not_unital" => Witness::NotUnital { index: index(&w["index"]) },
        "commutative" => Witness::Commutative,
        "commutator_square_not_central" => Witness::CommutatorSquareNotCentral {
            x: e("x"),
            y: e("y"),
            commutator: e("commutator"),
            square: e("square"),
            basis_index: index(&w["basis_index"]),
        },
        "commutator_zero_divisor" => Witness::CommutatorZeroDivisor {
            x: e("x"),
            y: e("y"),
            commutator: e("commutator"),
            annihilator: e("annihilator"),
            side: side(&w["side"]),
        },
        "zero_divisor" => Witness::ZeroDivisor { element: e("element"), annihilator: e("annihilator"), side: side(&w["side"]) },
        "anticommutation" => Witness::Anticommutation { i: e("i"), j: e("j"), sum: e("sum") },
        "not_central" => Witness::NotCentral { element: e("element"), basis_index: index(&w["basis_index"]) },
        "central" => Witness::Central { element: e("element") },
        "characteristic_two" => Witness::CharacteristicTwo { unit: e("unit") },
        "linear_dependence" => Witness::LinearDependence {
            elements: w["elements"].as_array().unwrap().iter().map(|v| element(alg, v)).collect(),
            coefficients: w["coefficients"].as_array().unwrap().iter().map(|v| element(alg, v)).collect(),
        },
        other => panic!("unknown witness kind {other}"),
    }
}
