import java.util.List;

class Stats {
  static double mean(double[] a, int n) {
    double s = 0;
<SimpleNestedLoop sp="true">
    for (int i = 0; i < n; i++) {
      s += a[i];
    }
</SimpleNestedLoop>
    return s / n;
  }

  static double norm(double[] a) {
    double q = 0;
    int i = 0;
<SimpleNestedLoop sp="true">
    while (i < a.length) {
      q += a[i] * a[i];
      i++;
    }
</SimpleNestedLoop>
    return Math.sqrt(q);
  }

  static double grid(double[][] m, int r, int c) {
    double t = 0;
<DoubleNestedLoop sp="true">
    for (int i = 0; i < r; i++) {
<SimpleNestedLoop sp="true">
      for (int j = 0; j < c; j++) {
        t += m[i][j];
      }
</SimpleNestedLoop>
    }
</DoubleNestedLoop>
    return t;
  }

  static int clampSum(int[] a, int n, int cap) {
    int s = 0;
<SimpleNestedLoop sp="true">
    for (int i = 0; i < n; i++) { s += a[i]; if (s > cap) s = cap; }
</SimpleNestedLoop>
    return s;
  }

  static double geo(double[] a, int n) {
    double p = 1;
<SimpleNestedLoop sp="true">
    for (int i = 1; i <= n; i++) p *= a[i - 1];
</SimpleNestedLoop>
    return p;
  }

  static double dist(Vec2 p, Vec2 q) {
    <SimpleArithmetic>return Math.hypot(p.x - q.x, p.y - q.y);</SimpleArithmetic>
  }

  static String concat(List<String> parts) {
    String out = "";
    for (String part : parts) out += part;
    return out;
  }
}
