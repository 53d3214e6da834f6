import java.util.List;

class RejectDecay {
  static double discounted(List<Item> items, double rate) {
    double sum = 0;
    for (Item it : items) {
      sum += it.price * rate;
      rate = rate * 1.1;
    }
    return sum;
  }
}
