//! Model files: write an operator to the JSON schema the CLI consumes, load
//! it back, and run checks on the parsed fields.

use nijenhuis::forms::toeplitz_form;
use nijenhuis::model::{load_model_file, save_model_file, Model, ModelMeta};
use nijenhuis::ring::rat;
use nijenhuis::verify::{check_nijenhuis, check_unity};

fn main() {
    let form = toeplitz_form(3, &rat(0)).unwrap();
    let model = Model {
        meta: ModelMeta { name: Some(form.name.clone()), expected_checks: None },
        variables: form.vars.clone(),
        mode: form.l.mode(),
        l: Some(form.l.clone()),
        e: Some(form.e.clone()),
        euler: None,
        circ: None,
    };

    let dir = std::env::temp_dir();
    let path = dir.join("toeplitz3-model.json");
    save_model_file(&path, &model).unwrap();
    println!("wrote {}", path.display());
    println!("{}", std::fs::read_to_string(&path).unwrap());

    let loaded = load_model_file(&path, None).unwrap();
    let l = loaded.l.expect("model has L");
    let e = loaded.e.expect("model has e");
    println!("semantic round-trip: {}", l == form.l && e == form.e);
    println!(
        "nijenhuis {}, unity {}",
        check_nijenhuis(&l).verdict(),
        check_unity(&l, &e).verdict()
    );
    let _ = std::fs::remove_file(&path);
}
