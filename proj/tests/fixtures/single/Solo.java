public class Solo {
    private int counter;

    public void tick() {
        counter++;
    }
}
