use stringnet_core::centre::{h_vector, list_centre_simples};
use stringnet_core::coends::HomSpaceVector;
use stringnet_core::frobenius::{frobenius_zr, sigma_f, sigma_f_all, v_vector};
use stringnet_core::graded_category::CategoryParams;
use stringnet_core::linalg::rank_of_vectors;
use stringnet_core::modular::{load_modular_data, pointed_modular_data, PointedFormSpec};
use stringnet_core::rspin::{enumerate_admissible, standard_decomposition, MarkedPlcw};
use stringnet_core::stringnet_spaces::{apply_operator, bp_operator_matrix, LoopConvention, DEFAULT_CAP};
use stringnet_core::{CycNum, Error};

fn params(r: u32) -> CategoryParams {
    CategoryParams::new(r).unwrap()
}

#[test]
fn sigma_f_images_are_fixed_by_the_puncture_projector() {
    for (r, g) in [(2u32, 1u32), (2, 2), (3, 1)] {
        let p = params(r);
        let f = frobenius_zr(&p).unwrap();
        let markings = enumerate_admissible(&standard_decomposition(g).unwrap(), r, DEFAULT_CAP).unwrap();
        let bp = bp_operator_matrix(&p, g, DEFAULT_CAP, LoopConvention::AnticlockwiseRight).unwrap();
        for v in sigma_f_all(&markings, &f).unwrap() {
            assert_eq!(apply_operator(&bp, &v).unwrap(), v);
        }
    }
}

#[test]
fn loop_conventions_agree() {
    for (r, g) in [(2u32, 1u32), (3, 1), (2, 2)] {
        let p = params(r);
        let a = bp_operator_matrix(&p, g, DEFAULT_CAP, LoopConvention::AnticlockwiseRight).unwrap();
        let b = bp_operator_matrix(&p, g, DEFAULT_CAP, LoopConvention::ClockwiseLeft).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn sigma_f_of_the_zero_marking_is_constant() {
    let p = params(3);
    let f = frobenius_zr(&p).unwrap();
    let c = standard_decomposition(1).unwrap();
    let m = MarkedPlcw::new(c, 3, [(0, 0), (1, 0)].into_iter().collect()).unwrap();
    let v = sigma_f(&m, &f).unwrap();
    let ones = v_vector(0, 0, &p);
    let scale = v.coords[0].clone();
    assert!(!scale.is_zero());
    for (x, y) in v.coords.iter().zip(&ones.coords) {
        assert_eq!(x, &(&scale * y));
    }
}

#[test]
fn torus_bases_from_both_constructions_span_the_same_space() {
    let p = params(3);
    let f = frobenius_zr(&p).unwrap();
    let markings = enumerate_admissible(&standard_decomposition(1).unwrap(), 3, DEFAULT_CAP).unwrap();
    let mut all: Vec<Vec<CycNum>> = sigma_f_all(&markings, &f).unwrap().into_iter().map(|v| v.coords).collect();
    for z in list_centre_simples(&p) {
        all.push(h_vector(&z, &p).unwrap().coords);
    }
    assert_eq!(rank_of_vectors(3, &all), 9);
}

#[test]
fn hom_space_vectors_round_trip_through_json() {
    let p = params(3);
    let v = h_vector(&list_centre_simples(&p)[4], &p).unwrap();
    let text = serde_json::to_string(&v).unwrap();
    let back: HomSpaceVector = serde_json::from_str(&text).unwrap();
    assert_eq!(back, v);
}

#[test]
fn modular_data_loads_from_disk() {
    let data = pointed_modular_data(PointedFormSpec { n: 3, c: 1 }).unwrap();
    let dir = std::env::temp_dir().join(format!("stringnet-core-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z3.json");
    std::fs::write(&path, serde_json::to_string(&data).unwrap()).unwrap();
    assert_eq!(load_modular_data(&path).unwrap(), data);
    std::fs::write(&path, "{\"labels\":[\"1\"],\"dual\":[0],\"dims\":[{\"order\":1,\"coeffs\":[\"2\"]}],\"s\":[[{\"order\":1,\"coeffs\":[\"2\"]}]]}").unwrap();
    assert!(matches!(load_modular_data(&path), Err(Error::Validation(_))));
    assert!(matches!(load_modular_data(dir.join("missing.json")), Err(Error::Parse(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}
