package textutil;

public class Text {
  public String text;

  public Text(String text) {
    this.text = text;
  }

  public void removeComments() {
    this.text = this.text.replaceAll("/\\*.*?\\*/", "");
  }

  public void removeDuplicateWords() {
    this.text = this.text.replaceAll("(\\w+)(\\s+)\\1\\b", "$1$2");
  }

  public void cleanText() {
    Text inst = new Text(text);
    inst.removeComments();
    inst.removeDuplicateWords();
    this.text = inst.text;
  }
}
