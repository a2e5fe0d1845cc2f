// Charged partitions and Maya diagrams: the profile bijection, the sum rule
// and the enumeration used by the series.

use piii_tau::partitions::{charge, enumerate_pairs, maya_from_young, young_from_maya, MayaDiagram};

pub fn run_example() -> piii_tau::error::Result<(u32, i32)> {
    // Particles at 5/2, holes at −3/2 and −11/2.
    let m = MayaDiagram::from_doubled(&[5], &[-3, -11])?;
    let (y, q) = young_from_maya(&m);
    println!("Maya diagram with charge {} <-> Y = {y}, Q = {q}", charge(&m));
    println!(
        "sum of positions = {}, Q^2/2 + |Y| = {}",
        m.energy_doubled() as f64 / 2.0,
        (q * q) as f64 / 2.0 + y.weight() as f64
    );
    assert_eq!(maya_from_young(&y, q), m);

    for tr in enumerate_pairs(1, 1) {
        let mp = maya_from_young(&tr.y_plus, tr.q);
        let particles: Vec<String> = mp.particles().map(|p| p.value().to_string()).collect();
        let holes: Vec<String> = mp.holes().map(|h| h.value().to_string()).collect();
        println!(
            "Y+ = {:6} Y- = {:6} Q = {:2}: m+ particles {:?} holes {:?}",
            tr.y_plus.to_string(),
            tr.y_minus.to_string(),
            tr.q,
            particles,
            holes
        );
    }
    println!("{} triples with weight <= 2, |Q| <= 1", enumerate_pairs(2, 1).count());
    Ok((y.weight(), q))
}

fn main() {
    run_example().expect("maya diagrams");
}
