//! JSON pipeline without the binary
//!
//! This example demonstrates:
//! - driving the construct, verify and classify commands in-process
//! - the JSON passed between them
//!
//! Run with: cargo run --example cli_pipeline

use leonard::cli::{dispatch, Command};
use leonard::Field;

fn main() {
    let spec = r#"{"family":"bannai_ito","d":4,"params":{"tau":"2","epsilon":-1}}"#;
    let built = dispatch(Command::Construct, Field::Rational, None, spec).unwrap();
    println!("construct -> a = {}", built.value["a"]["entries"]);
    let verified = dispatch(Command::Verify, Field::Rational, None, &built.value.to_string()).unwrap();
    println!("verify -> leonard_pair = {}", verified.value["leonard_pair"]);
    println!("          parameter array = {}", verified.value["parameter_array"]);
    let classified = dispatch(Command::Classify, Field::Rational, None, &verified.value.to_string()).unwrap();
    println!("classify -> {}", classified.value["family"]);
    println!("            verified = {}", classified.value["verified"]);
}
