String s = "*/";
