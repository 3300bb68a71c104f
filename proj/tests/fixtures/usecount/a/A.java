package a;

import b.B;

public class A {
    B helper;

    void setup() {
        helper = new B();
    }
}
