use dfskit::codes::{steane_code, xzyx_code, xx_chain_code, six_one_code};
use dfskit::synth::{rotation_plan, CentralBody, LogicalAxis};
use dfskit::circuit::Angle;

fn main() {
    for (name, code) in [("steane", steane_code()), ("xzyx", xzyx_code()), ("chain", xx_chain_code()), ("six_one", six_one_code())] {
        println!("== {name}: n={} l={} css={}", code.n_qubits(), code.encoded_count(), code.is_css());
        println!("   gens: {:?}", code.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>());
        for j in 0..code.encoded_count() {
            println!("   Z[{j}]={}  X[{j}]={}", code.logical_z(j), code.logical_x(j));
        }
        println!("   logical_cols: {:?}", code.logical_cols());
    }
    let steane = steane_code();
    for axis in [LogicalAxis::Z, LogicalAxis::X] {
        let plan = rotation_plan(&steane, axis, 0, Angle::Radians(0.37), CentralBody::Two).unwrap();
        println!("steane {axis:?} plan: conjugators={:?} central={} sign={}",
            plan.conjugators.iter().map(|(op, s)| format!("{op}@{s}")).collect::<Vec<_>>(),
            plan.central_axis, plan.central_sign);
    }
}
