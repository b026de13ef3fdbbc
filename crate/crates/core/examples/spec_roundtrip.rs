//! Parsing JSON function specs, and what the validation errors look like.

use young_cert::spec::parse_spec;

fn main() {
    let docs = [
        r#"{"kind":"power","exponent":2,"domain":[0,2]}"#,
        r#"{"kind":"table","points":[[0,0],[1,2],[3,5]]}"#,
        r#"{"kind":"table","points":[[0,0],[1,1],[2,1]]}"#,
        r#"{"kind":"affine","slope":-1,"intercept":0,"domain":[0,1]}"#,
        r#"{"kind":"power","exponent":2,"domain":[0,2],"codomain":[0,5]}"#,
    ];
    for doc in docs {
        match parse_spec(doc) {
            Ok(spec) => println!("ok   {}", spec.to_canonical_json()),
            Err(e) => println!("err  {e}"),
        }
    }
}
