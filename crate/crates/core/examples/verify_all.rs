use isodirac::{verify_family, FamilyParams, VerifyConfig};

fn main() {
    for p in [
        FamilyParams::radial(3.0, 1.0, 1).unwrap(),
        FamilyParams::scarf_i(4.0, 2.0, 1).unwrap(),
        FamilyParams::gpt(2.0, 5.0, 1).unwrap(),
    ] {
        let t = std::time::Instant::now();
        match verify_family(&VerifyConfig::new(p)) {
            Ok(r) => print!("{}", r.to_text()),
            Err(e) => println!("{p}: error {e}"),
        }
        println!("elapsed {:?}", t.elapsed());
    }
}
