//! Every example runs to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                run_example().unwrap();
            }
        }
    };
}

example!(field_arithmetic);
example!(counting_bounds);
example!(thresholds);
example!(decode_instance);
example!(phase_transition);
example!(sparse_vs_dense);
example!(noisy_decoding);
example!(distance_spectrum);
example!(reliability_probe);
