fn main() {
    println!("bhlab");
}
