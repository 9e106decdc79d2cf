fn main() { println!("qchab placeholder"); }
