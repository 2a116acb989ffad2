use crate::model::Name;

/// Joins a predicate or schema name with its arguments using `_`,
/// following the `on_a_b` / `pickup_a` naming of the universal instances.
pub fn mangle(name: &Name, args: &[Name]) -> Name {
    if args.is_empty() {
        return name.clone();
    }
    let mut text = name.as_str().to_string();
    for a in args {
        text.push('_');
        text.push_str(a.as_str());
    }
    Name::new(&text).expect("joined names are valid names")
}
