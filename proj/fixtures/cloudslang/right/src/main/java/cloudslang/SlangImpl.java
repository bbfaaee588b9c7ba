package cloudslang;

import java.util.HashSet;
import java.util.Set;

public class SlangImpl {

  public Set<String> getAllEventTypes() {
    Set<String> eventTypes = new HashSet<String>();
    eventTypes.add("EVENT_ACTION_START");
    eventTypes.add("EVENT_ACTION_END");
    eventTypes.add("EVENT_ACTION_ERROR");
    eventTypes.add("EVENT_STEP_START");
    eventTypes.add("EVENT_STEP_END");
    eventTypes.add("EVENT_STEP_ERROR");
    eventTypes.add("EVENT_INPUT_START");
    eventTypes.add("EVENT_INPUT_END");
    eventTypes.add("EVENT_OUTPUT_START");
    eventTypes.add("EVENT_OUTPUT_END");
    eventTypes.add("EVENT_EXECUTION_FINISHED");
    eventTypes.add("EVENT_EXECUTION_PAUSED");
    eventTypes.add("EVENT_EXECUTION_RESUMED");
    eventTypes.add("EVENT_EXECUTION_CANCELED");
    eventTypes.add("EVENT_BRANCH_START");
    eventTypes.add("EVENT_BRANCH_END");
    eventTypes.add("EVENT_SPLIT_BRANCHES");
    eventTypes.add("EVENT_JOIN_BRANCHES");
    eventTypes.add("EVENT_TASK_START");
    eventTypes.add("EVENT_SCRIPT_START");
    eventTypes.add("EVENT_SCRIPT_END");
    return eventTypes;
  }
}
