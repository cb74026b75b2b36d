//! Plug-in estimate of a domain's entropy parameter from program tokens.

use reuselaw::domainsim::{estimate_entropy_parameter_for_spec, BodySizes, DomainSpec};

fn main() {
    for target_h in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let spec = DomainSpec {
            target_h,
            alphabet_size: 256,
            zipf_exponent: 2.0,
            body_size_bits: BodySizes::Fixed(64),
            seed: 9,
        };
        let estimate =
            estimate_entropy_parameter_for_spec(&spec, &[100_000, 200_000, 400_000], 1).unwrap();
        println!("planted H = {target_h:.2}  estimated {estimate:.3}");
    }
}
