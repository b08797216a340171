//! Walk through the built-in normal forms for a single real eigenvalue, a
//! single complex pair, and the differentially non-degenerate case, running
//! the full verification battery on each.

use nijenhuis::forms::{
    companion_dnd_form, complex_block_form, complex_toeplitz_form, jordan_unity_form,
    jordan_unity_form_flipped, toeplitz_form, BuiltForm,
};
use nijenhuis::ring::{rat, ratio};
use nijenhuis::verify::{check_nijenhuis, check_trace_and_sigma, check_unity};

fn show(form: &BuiltForm) {
    println!("== {} ==", form.name);
    for row in form.l.rows() {
        let rendered: Vec<String> = row.iter().map(|x| x.render(&form.vars)).collect();
        println!("  [{}]", rendered.join(", "));
    }
    println!(
        "  nijenhuis: {}  unity: {}  sigma: {}",
        check_nijenhuis(&form.l).verdict(),
        check_unity(&form.l, &form.e).verdict(),
        check_trace_and_sigma(&form.l, &form.e).verdict(),
    );
}

fn main() {
    show(&jordan_unity_form(4, &ratio(1, 2)).unwrap());
    show(&toeplitz_form(4, &rat(0)).unwrap());
    show(&companion_dnd_form(4).unwrap());
    show(&complex_block_form(2, &rat(1), &rat(1)).unwrap());
    show(&complex_toeplitz_form(2, &rat(0), &rat(2)).unwrap());

    // the variant with the opposite sign convention in the last row stops
    // being Nijenhuis at n = 4 — only one of the two conventions is right
    let flipped = jordan_unity_form_flipped(4, &rat(0)).unwrap();
    println!(
        "\n{} (opposite last-row sign): nijenhuis {}",
        flipped.name,
        check_nijenhuis(&flipped.l).verdict()
    );
}
