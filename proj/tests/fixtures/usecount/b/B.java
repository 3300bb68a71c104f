package b;

public class B {
    public B() {
    }
}
