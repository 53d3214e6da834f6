import java.util.List;

class Averages {
  static double mean(double[] xs, int n) {
    double acc = 0;
    for (int i = 0; i <= n - 1; i++) {
      acc = acc + xs[i] / n;
    }
    return acc;
  }

  static double harmonic(List<Double> xs) {
    double h = 1;
    for (Double x : xs) {
      h /= x;
    }
    return h;
  }

  static long countdown(long[] a, int n) {
    long p = 1;
    for (int i = n; i > 0; i--) {
      p *= a[i - 1];
    }
    return p;
  }
}
