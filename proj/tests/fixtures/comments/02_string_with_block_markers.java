String s = "/* not */";
