// Round trip through the JSON state format.

use qtangle::qstate::StateFile;
use qtangle::tangles::TangleReport;

fn main() {
    // unnormalised on purpose: loading rescales and reports the factor
    let text = r#"{ "n_qubits": 3, "amplitudes": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,1]] }"#;
    let loaded = StateFile::parse(text).unwrap();
    println!("norm factor {:.6}", loaded.norm_factor);

    let report = TangleReport::compute(&loaded.state, None).unwrap();
    print!("{}", report.table());

    let back = serde_json::to_string(&loaded.state.to_json()).unwrap();
    println!("{back}");
}
