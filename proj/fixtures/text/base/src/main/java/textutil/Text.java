package textutil;

public class Text {
  public String text;

  public Text(String text) {
    this.text = text;
  }

  public void removeComments() {
    this.text = this.text.replaceAll("/\\*.*?\\*/", "");
  }

  public void cleanText() {
    Text inst = new Text(text);
    inst.removeComments();
    this.text = inst.text;
  }
}
