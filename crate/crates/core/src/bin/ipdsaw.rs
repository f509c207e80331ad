fn main() {
    println!("ipdsaw CLI placeholder");
}
